#pragma once

#include "lkt/tits.hpp"

#include <optional>
#include <vector>

namespace lkt {

// Independent model of SL(n) and PGL(n) by explicit monomial matrices whose entries
// are roots of unity e(a) = exp(2 pi i a), exponents read mod 1. PGL(n) elements are
// carried as GL(n) matrices and compared up to scalars.
enum class OracleGroup { SL, PGL };

// Column j has its single entry e(exps[j]) in row perm[j].
struct Monomial {
  std::vector<int> perm;
  QVec exps;
  bool operator==(const Monomial& o) const = default;
  auto operator<=>(const Monomial& o) const = default;
};

struct OracleClass {
  Monomial rep;
  std::optional<Rat> square;  // scalar exponent of rep^2; 0 in PGL(n)
  // Per positive root of the matching datum: 1 noncompact, 0 compact, -1 not imaginary.
  std::vector<int> gradings;
};

class MatrixOracle {
 public:
  MatrixOracle(OracleGroup g, int n);

  int size() const { return n_; }
  Monomial canonical(const Monomial& x) const;
  Monomial multiply(const Monomial& x, const Monomial& y) const;
  Monomial inverse(const Monomial& x) const;
  Monomial diagonal(const QVec& exps) const;
  // Scalar exponent when x is central; central elements of PGL(n) report 0.
  std::optional<Rat> scalar_of(const Monomial& x) const;

  // Torus element e(t) for t in X_*(H) (x) Q of the type A datum with this isogeny.
  Monomial torus(const QVec& t) const;
  // phi_i of [[0, 1], [-1, 0]] for the simple root i.
  Monomial sigma_simple(int i) const;
  // Image of e(t) sigma_w; the inner class is the compact one, so delta acts trivially.
  Monomial from_tits(const WeylGroup& W, const TitsElement& e) const;

  // Classes of strong involutions in the normalizer of the diagonal torus under torus conjugation.
  const std::vector<OracleClass>& classes() const { return classes_; }
  int class_of(const Monomial& x) const;

 private:
  std::vector<int> grading(const Monomial& x) const;

  OracleGroup g_;
  int n_;
  std::vector<std::pair<int, int>> positive_roots_;  // e_a - e_b, in the datum's root order
  std::vector<OracleClass> classes_;
  std::vector<Monomial> members_;
  std::vector<int> member_class_;
};

}  // namespace lkt
