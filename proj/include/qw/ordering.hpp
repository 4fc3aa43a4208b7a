#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qw/carter.hpp"

namespace qw {

/// Normal ordering of the standard positive roots, with the reduced word of
/// the longest element it comes from.
struct NormalOrdering {
  std::vector<int> sequence;
  std::vector<int> reduced_word;
  friend bool operator==(const NormalOrdering& a, const NormalOrdering& b) { return a.sequence == b.sequence; }
};

struct NormalityViolation {
  int alpha;
  int beta;
  int sum;  // alpha + beta, not placed between alpha and beta
};

/// Exhaustive check over all additive triples inside `seq`.
std::optional<NormalityViolation> validate_normal(const RootSystem& rs, const std::vector<int>& seq);

/// beta_j = s_{i_1} ... s_{i_{j-1}} alpha_{i_j}. Throws NotReduced or NotLongest.
NormalOrdering ordering_from_reduced_word(const RootSystem& rs, const std::vector<int>& word);

/// Every normal ordering, in lexicographic order of reduced words. Throws
/// InvalidArgument if there are more than `limit`.
std::vector<NormalOrdering> all_normal_orderings(const RootSystem& rs, std::size_t limit = 100000);

struct Transposition {
  int begin;  // positions [begin, end) are inverted
  int end;
  NormalOrdering result;
};

/// Inversions of rank 2 segments, one per braid move on the reduced word.
std::vector<Transposition> elementary_transpositions(const RootSystem& rs, const NormalOrdering& ordering);

/// True if seq is one of the rank 2 patterns alpha, alpha+beta, ..., beta (or
/// its inverse) with (alpha,alpha) >= (beta,beta) and alpha - beta not a root.
bool is_rank2_pattern(const RootSystem& rs, const std::vector<int>& seq);

/// beta_1 .. beta_D, -beta_1 .. -beta_D placed clockwise on a circle.
class CircularOrdering {
 public:
  CircularOrdering(const RootSystem& rs, const NormalOrdering& ordering);
  int position(int root) const { return position_[root]; }
  /// The clockwise segment from a to b, both included.
  std::vector<int> segment(int a, int b) const;
  /// [a, b] contains neither -a nor -b.
  bool is_minimal(int a, int b) const;
  bool less(int a, int b) const { return is_minimal(a, b); }
  /// The segment [a, b] if it is minimal, otherwise empty.
  std::vector<int> minimal_segment(int a, int b) const;

 private:
  const RootSystem* rs_;
  std::vector<int> circle_;
  std::vector<int> position_;
};

inline bool circular_less(int a, int b, const CircularOrdering& circ) { return circ.less(a, b); }

/// Half-open range of positions in the ordering.
struct Range {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
  bool contains(int p) const { return begin <= p && p < end; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Ordering of the shape described for the positive system associated to s,
/// in the adapted frame. The gamma lists are relabelled in order of
/// appearance.
struct AssociatedOrdering {
  NormalOrdering base;
  std::vector<int> gamma1;
  std::vector<int> gamma2;
  Range s1_inversions;  // Delta_{s^1}
  Range s1_minus;       // alpha with s^1 alpha = -alpha
  Range s2_inversions;  // Delta_{s^2}
  Range s2_minus;
  Range fixed;          // (Delta_0)_+
  Range m_plus;         // Delta_{m_+}
  Range s_inversions;   // Delta_s
  int length_s = 0;
  int lprime = 0;
  std::vector<std::pair<std::string, bool>> certificates;
  long long words_visited = 0;
  std::string choice = "lexicographically first reduced word";

  bool all_certified() const;
};

/// Checks every property of the associated ordering on a given normal
/// ordering; `out` receives the ranges and the relabelled gammas.
std::vector<std::pair<std::string, bool>> certify_associated(const ClassData& cd, const NormalOrdering& ordering,
                                                             AssociatedOrdering* out = nullptr);

/// First reduced word of the longest element, in lexicographic order, whose
/// ordering passes every certificate. Throws NotFound with the number of
/// words visited.
AssociatedOrdering build_associated_ordering(const ClassData& cd);

/// Tries the Carter candidates of s in the order preferred by
/// carter_decompose until an associated ordering exists.
std::pair<ClassData, AssociatedOrdering> associate(const RootSystem& rs, const WeylElement& s, unsigned seed = 0);

}  // namespace qw
