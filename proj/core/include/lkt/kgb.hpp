#pragma once

#include "lkt/tits.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lkt {

struct InfiniteFiber : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotImaginary : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotNoncompact : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyPreimage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct FiberMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Point of the KGB space: fiber index and torus part relative to that fiber's basepoint.
struct KgbElement {
  int fiber = 0;
  QVec t;
  bool operator==(const KgbElement& o) const = default;
  auto operator<=>(const KgbElement& o) const = default;
};

enum Grading : int { Compact = 0, Noncompact = 1 };

struct FiberData {
  int w = 0;
  IntMatrix tau;            // on X_*(H)
  SmithForm plus;           // Smith form of 1 + tau
  TitsElement basepoint;    // e(rho_check/2) sigma_w delta
  QVec basepoint_square;    // exponent of the basepoint squared
  std::vector<int> imaginary, real, complex;  // positive root indices
  std::vector<int> base_grading;              // per root index, -1 if not imaginary
  bool finite = false;
  QMatrix m_basis;          // columns: basis of the lattice M of admissible (1+tau)t
  FiniteAbelianGroup u;     // M / (1+tau) X_*
  std::string infinite_reason;
};

// Strong involutions of one inner class modulo H, organised by fiber.
class Kgb {
 public:
  explicit Kgb(const InnerClass& ic);
  Kgb(const Kgb&) = delete;
  Kgb& operator=(const Kgb&) = delete;

  const InnerClass& inner_class() const { return W_.inner_class(); }
  const RootDatum& datum() const { return W_.datum(); }
  const WeylGroup& weyl() const { return W_; }
  const TitsGroup& tits() const { return T_; }
  std::size_t rank() const { return datum().rank(); }

  std::size_t nfibers() const { return fibers_.size(); }
  const FiberData& fiber(int k) const { return fibers_[k]; }
  int fiber_of_weyl(int w) const;
  int fiber_of_tau(const IntMatrix& tau) const;

  QVec normalize(int k, const QVec& t) const;
  KgbElement make(int k, const QVec& t) const { return {k, normalize(k, t)}; }
  KgbElement basepoint(int k) const;
  TitsElement strong_involution(const KgbElement& x) const;
  // Inverse of strong_involution for elements e(t) sigma_w delta with w a twisted involution.
  KgbElement from_tits(const TitsElement& g) const;
  // Exponent of the square of the strong involution, reduced mod X_*(H).
  QVec square(const KgbElement& x) const;
  bool is_central(const QVec& z) const;
  QVec z_star() const;

  RootType root_type(int k, int root) const;
  int grading(const KgbElement& x, int root) const;
  int base_grading(int k, int root) const;
  bool is_noncompact(const KgbElement& x, int root) const { return grading(x, root) == Noncompact; }
  // Simple roots of the positive imaginary system at the fiber.
  std::vector<int> simple_imaginary(int k) const;

  KgbElement cross(int w, const KgbElement& x) const;
  KgbElement cross_simple(std::size_t s, const KgbElement& x) const { return cross(W_.simple(s), x); }
  KgbElement cayley(int root, const KgbElement& x) const;
  std::vector<KgbElement> inverse_cayley(int root, const KgbElement& x) const;

  // Elements of fiber k whose strong involution squares to e(z).
  std::vector<KgbElement> fiber_with_square(int k, const QVec& z) const;
  // Orbit of the basepoint under U_tau.
  std::vector<KgbElement> enumerate_fiber(int k) const;
  std::vector<KgbElement> enumerate(const std::optional<QVec>& z = std::nullopt) const;
  // Distinct central classes realised by the fiber k.
  std::vector<QVec> squares_in_fiber(int k) const;

  const FiniteAbelianGroup& u_tau(int k) const;
  QVec u_representative(int k, const IVec& u) const;
  KgbElement act(const IVec& u, const KgbElement& x) const;
  IVec d_tau(const KgbElement& x) const;
  // Class in U_tau of the torus element e(t); (1+tau)t must lie in M.
  IVec u_class(int k, const QVec& t) const;
  // Classes of U_tau with integral (1+tau)t, i.e. exponents landing in X_*.
  bool in_u0(int k, const IVec& u) const;

  // Component labels under cross actions and Cayley transforms, restricted to elems.
  std::vector<int> conjugacy_labels(const std::vector<KgbElement>& elems) const;
  // Label of x among the points sharing its square, cached per square.
  int component_label(const KgbElement& x) const;

  // Mismatches found when base gradings are recomputed along every edge.
  std::vector<std::string> grading_consistency_report() const;

 private:
  void build_fiber(int k);
  void compute_base_gradings();
  std::vector<int> gradings_from_cross(int k, std::size_t s) const;
  std::vector<int> gradings_from_cayley(int k, std::size_t s) const;

  WeylGroup W_;
  TitsGroup T_;
  std::vector<FiberData> fibers_;
  std::vector<int> fiber_by_weyl_;
  mutable std::mutex label_guard_;
  mutable std::map<QVec, std::map<KgbElement, int>> label_cache_;
};

std::string str(const KgbElement& x);

}  // namespace lkt
