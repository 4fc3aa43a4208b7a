#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qw/rootsys.hpp"

namespace qw {

using QVec = Vec<QuadraticNumber>;

/// s = s1 s2 with s1 (s2) the product of reflections in gamma1 (gamma2).
struct CarterDecomposition {
  std::vector<int> gamma1;
  std::vector<int> gamma2;
  friend bool operator==(const CarterDecomposition&, const CarterDecomposition&) = default;
};

Matrix<Rational> reflection_product(const RootSystem& rs, const std::vector<int>& roots);

/// Checks the structural invariants of a decomposition: positivity and
/// orthogonality of each list, s = s1 s2, a basis of h'*, and no line on which
/// s1 acts by -1 while s2 is trivial. On failure `why` names the first
/// violated one.
bool is_valid_carter(const RootSystem& rs, const WeylElement& s, const CarterDecomposition& dec,
                     std::string* why = nullptr);

/// Every root fixed by s2 is fixed by s. Not attainable for every class: in B2
/// and G2 each reflection fixes a root, so no decomposition of the Coxeter
/// element satisfies it.
bool fixed_roots_condition(const RootSystem& rs, const WeylElement& s, const CarterDecomposition& dec);

/// All valid decompositions built from positive roots, in lexicographic order
/// of (gamma1, gamma2) as lists of root indices. For each gamma1 only the
/// lexicographically least gamma2 is kept.
std::vector<CarterDecomposition> carter_candidates(const RootSystem& rs, const WeylElement& s);

/// The lexicographically least valid decomposition that also satisfies the
/// fixed-roots condition, or the least valid one if none does.
CarterDecomposition carter_decompose(const RootSystem& rs, const WeylElement& s);

struct InvariantSubspace {
  enum class Kind { Fixed, Line, Plane };
  Kind kind = Kind::Fixed;
  std::vector<QVec> basis;  // pairwise orthogonal, in simple-root coordinates of h* = h
  int s1_sign = 0;          // lines only
  int s2_sign = 0;          // lines only
  Rational angle;           // rotation angle divided by 2 pi: 1/2 for lines, 0 for the fixed space
  QVec v1;                  // planes: -1 eigenvector of s1, with (v1, v2) < 0
  QVec v2;                  // planes: -1 eigenvector of s2
  QVec h;                   // the chosen vector h_i (after rescaling)
  int scale_exponent = 0;   // h_i was multiplied by 10^scale_exponent
};

struct SpectralDecomposition {
  std::int64_t radicand = 1;  // the single quadratic extension in use, 1 if none
  std::vector<InvariantSubspace> subspaces;  // index 0 is the fixed space of s
};

/// Orthogonal s-invariant decomposition of h_R into the fixed space, lines on
/// which s acts by -1 and planes on which it rotates, each invariant under s1
/// and s2. Lines on which s1 acts by -1 come right after the fixed space.
SpectralDecomposition invariant_subspaces(const RootSystem& rs, const WeylElement& s, const CarterDecomposition& dec);

QuadraticNumber pair(const RootSystem& rs, const QVec& h, int root);

struct StratumInequality {
  int root;
  int k;
  int l;
  SignCertificate certificate;  // sign of h_{i_k}(a)^2 - (sum_{l<=j<k} h_{i_j}(a))^2
};

struct PositiveSystemS {
  std::vector<int> positive;                 // root indices a with hbar(a) > 0
  std::vector<int> stratum_subspace;         // i_k
  std::vector<std::vector<int>> strata;      // Delta_{i_k}
  std::vector<int> stratum_of;               // root -> k
  QVec hbar;
  std::vector<StratumInequality> inequalities;
  std::vector<SignCertificate> hbar_signs;  // per root
};

/// Draws h_i from a seeded generator, rescales them until the strict stratum
/// inequalities certify, and returns the positive system of hbar. The chosen
/// h_i are written back into `spectral`.
PositiveSystemS associated_positive_system(const RootSystem& rs, const WeylElement& s, SpectralDecomposition& spectral,
                                           unsigned seed = 0);

/// A Weyl group element u with u(standard positive roots) = `positive`.
WeylElement adapting_element(const RootSystem& rs, const std::vector<int>& positive);

/// Everything about a class representative s, transported to the frame in
/// which the associated positive system is the standard one.
struct ClassData {
  RootSystem rs;
  WeylElement s_input;
  CarterDecomposition carter_input;
  SpectralDecomposition spectral;
  PositiveSystemS positive_input;
  WeylElement adapt;  // u with u(Delta_+) = Delta_+^s

  WeylElement s;  // u^{-1} s u, stored with a reduced word
  WeylElement s1;
  WeylElement s2;
  std::vector<int> gamma1;  // positive in the adapted frame
  std::vector<int> gamma2;
  std::vector<int> stratum_of;  // adapted root index -> k
  int num_strata = 0;
  std::vector<int> to_adapted;  // original root index -> adapted root index

  int fixed_stratum() const;  // k with Delta_{i_k} = Delta_0, or -1 if Delta_0 is empty
};

ClassData prepare_class(const RootSystem& rs, const WeylElement& s, const CarterDecomposition& dec, unsigned seed = 0);

}  // namespace qw
