#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qw/matrix.hpp"

namespace qw {

using IntVec = std::vector<int>;
using IntMatrix = Matrix<Rational>;  // integral in practice; kept rational for uniform algebra

/// Reduced root system in the coordinates of its simple roots.
///
/// Roots are integer vectors of simple-root coefficients. Index layout:
/// positive roots 0..P-1 sorted by height then lexicographically, and the
/// root at index P+k is the negative of the root at index k.
class RootSystem {
 public:
  /// Types A_n, B_n (n>=2), C_n (n>=3), D_n (n>=4), G2, and products such as
  /// "A1xA1". Bourbaki numbering: alpha_n short in B_n, long in C_n; alpha_1
  /// short in G2. Long roots have squared length 2 in every component.
  static RootSystem from_name(const std::string& name);

  const std::string& name() const { return name_; }
  int rank() const { return rank_; }
  int num_positive() const { return num_positive_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }

  const IntVec& root(int index) const { return roots_[index]; }
  const std::vector<IntVec>& roots() const { return roots_; }
  std::optional<int> index_of(const IntVec& coords) const;
  int require_index(const IntVec& coords) const;
  int negative(int index) const { return index < num_positive_ ? index + num_positive_ : index - num_positive_; }
  bool is_positive(int index) const { return index < num_positive_; }
  int simple(int i) const { return i; }  // simple roots come first: height 1, lexicographically ordered
  int height(int index) const;

  /// Gram matrix of the invariant form on simple roots.
  const Matrix<Rational>& form() const { return form_; }
  Rational inner(const Vec<Rational>& x, const Vec<Rational>& y) const;
  Rational inner_roots(int a, int b) const;
  Rational norm2(int index) const { return inner_roots(index, index); }
  /// <beta, alpha^vee> = 2(beta,alpha)/(alpha,alpha).
  int pairing(int beta, int alpha) const;
  /// cartan(i,j) = <alpha_i, alpha_j^vee>.
  int cartan(int i, int j) const { return pairing(i, j); }

  /// Dynkin labels <mu, alpha_j^vee> of a root.
  IntVec dynkin_labels(int index) const;

  /// Matrix of the reflection s_alpha on root coordinates.
  Matrix<Rational> reflection(int index) const;
  /// Matrix of s_alpha on coroot coordinates (basis alpha_1^vee..alpha_l^vee).
  Matrix<Rational> coroot_reflection(int index) const;
  /// Coroot coordinates of alpha^vee for a root.
  Vec<Rational> coroot(int index) const;

  /// Image of root `index` under a root-coordinate matrix; throws if not a root.
  int apply(const Matrix<Rational>& w, int index) const;

  /// Root-index permutation induced by a root-coordinate matrix.
  std::vector<int> permutation(const Matrix<Rational>& w) const;

 private:
  std::string name_;
  int rank_ = 0;
  int num_positive_ = 0;
  Matrix<Rational> form_;
  std::vector<IntVec> roots_;
  std::map<IntVec, int> index_;
};

Vec<Rational> to_rational(const IntVec& v);

/// Weyl group element: a word in simple reflections together with its matrix
/// on root coordinates. Equality compares matrices.
class WeylElement {
 public:
  WeylElement() = default;
  WeylElement(const RootSystem& rs, std::vector<int> word);
  static WeylElement identity(const RootSystem& rs) { return WeylElement(rs, {}); }
  static WeylElement longest(const RootSystem& rs);

  const std::vector<int>& word() const { return word_; }
  const Matrix<Rational>& matrix() const { return matrix_; }
  /// Matrix on coroot coordinates.
  Matrix<Rational> coroot_matrix(const RootSystem& rs) const;

  WeylElement compose(const RootSystem& rs, const WeylElement& other) const;  // this * other
  WeylElement inverse(const RootSystem& rs) const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.matrix_ == b.matrix_; }

 private:
  std::vector<int> word_;
  Matrix<Rational> matrix_;
};

struct WeylAnalysis {
  int length = 0;
  std::vector<int> inversion_set;  // positive roots alpha with w(alpha) negative
  std::vector<int> reduced_word;
  int order = 1;
};

/// Length, inversion set and reduced word with respect to a positive system
/// given as a set of root indices (the standard one when empty).
WeylAnalysis analyze(const RootSystem& rs, const WeylElement& w, const std::vector<int>& positive = {});

/// Reduced word of an element given by its root-coordinate matrix.
std::vector<int> reduced_word(const RootSystem& rs, const Matrix<Rational>& w);

/// All group elements, breadth first from the identity (so by length).
std::vector<WeylElement> weyl_group(const RootSystem& rs);

/// Conjugacy classes, each represented by an element of minimal length
/// (lexicographically least reduced word among those).
std::vector<WeylElement> conjugacy_class_representatives(const RootSystem& rs);

std::vector<int> parse_word(const std::string& text);
std::string word_to_string(const std::vector<int>& word);

}  // namespace qw
