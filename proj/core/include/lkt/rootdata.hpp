#pragma once

#include "lkt/lattice.hpp"

#include <string>
#include <vector>

namespace lkt {

struct InvalidCartanMatrix : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RankMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidInnerClass : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Root {
  IVec root;    // in X^*(H)
  IVec coroot;  // in X_*(H)
  IVec coeffs;  // simple-root coefficients
  bool positive;
  Int height;
};

enum class Isogeny { SimplyConnected, Adjoint };

class RootDatum {
 public:
  // Simple roots and coroots given as rows of n-column matrices.
  RootDatum(IntMatrix simple_roots, IntMatrix simple_coroots, std::string name = "");

  const std::string& name() const { return name_; }
  std::size_t rank() const { return rank_; }
  std::size_t semisimple_rank() const { return simple_roots_.rows(); }
  const IntMatrix& simple_roots() const { return simple_roots_; }
  const IntMatrix& simple_coroots() const { return simple_coroots_; }
  IntMatrix cartan() const;  // A(i,j) = <alpha_i, alpha_j^vee>

  // Positive roots come first, ordered by height; root i < semisimple_rank() is simple root i.
  const std::vector<Root>& roots() const { return roots_; }
  std::size_t npos() const { return roots_.size() / 2; }
  int negative(int r) const;
  int find_root(const IVec& root) const;
  int find_coroot(const IVec& coroot) const;
  int positive_of(int r) const { return roots_[r].positive ? r : negative(r); }

  const QVec& rho() const { return rho_; }
  const QVec& rho_check() const { return rho_check_; }
  // sum over roots of <x,a^vee><y,a^vee> on the character side.
  Rat invariant_form(const QVec& x, const QVec& y) const;
  // Coroot of a rational vector in the root span, through the invariant form.
  QVec coroot_of(const QVec& beta) const;

  bool operator==(const RootDatum& o) const {
    return simple_roots_ == o.simple_roots_ && simple_coroots_ == o.simple_coroots_;
  }

 private:
  std::string name_;
  std::size_t rank_;
  IntMatrix simple_roots_, simple_coroots_;
  std::vector<Root> roots_;
  QVec rho_, rho_check_;
};

// Grammar: tokens TYPE{RANK} joined by '.', T{k} for central tori.
RootDatum build_datum(const std::string& spec, Isogeny isogeny);
// Explicit simple roots and coroots as rows.
RootDatum build_datum(const IntMatrix& simple_roots, const IntMatrix& simple_coroots);
RootDatum dual_datum(const RootDatum& d);
IntMatrix cartan_matrix(char type, int rank);

// Longest Weyl element as a matrix on X_*(H).
IntMatrix longest_element_matrix(const RootDatum& d);

struct InnerClass {
  RootDatum datum;
  IntMatrix gamma;  // on X_*(H)
  // gamma^T alpha_i = alpha_{perm[i]}, gamma alpha_i^vee = alpha_{perm[i]}^vee
  std::vector<int> perm;
};

// keyword "c" (gamma = 1), "s" (gamma = -w0), or an explicit matrix.
InnerClass make_inner_class(const RootDatum& d, const std::string& keyword);
InnerClass make_inner_class(const RootDatum& d, const IntMatrix& gamma);
InnerClass dual_inner_class(const InnerClass& ic);

enum class RootType { Imaginary, Real, Complex };
const char* root_type_name(RootType t);
// tau acts on X_*(H); roots transform by the transpose.
RootType classify_root(const RootDatum& d, const IntMatrix& tau, int root);
IVec act_on_character(const IntMatrix& tau, const IVec& x);
QVec act_on_character(const IntMatrix& tau, const QVec& x);

struct RootSubsystem {
  std::vector<int> roots;     // all member indices
  std::vector<int> positive;  // members positive in the ambient order
  std::vector<int> simple;    // simple for the induced positive system
};
// Closed subsystem from a membership predicate.
RootSubsystem subsystem(const RootDatum& d, const std::vector<bool>& member);
RootSubsystem integral_system(const RootDatum& d, const RationalVector& lambda);
RootSubsystem singular_system(const RootDatum& d, const QVec& lambda);
RootSubsystem imaginary_system(const RootDatum& d, const IntMatrix& tau);

struct RestrictedSystem {
  std::vector<int> quasi;           // roots orthogonal to all imaginary coroots
  std::vector<QVec> roots;          // distinct nonzero restrictions, on the character side
  std::vector<QVec> coroots;        // on the cocharacter side
  std::vector<bool> positive;
  std::vector<int> simple;          // indices into roots
  std::vector<QVec> fundamental;    // dual to the simple coroots within the restricted span
};
RestrictedSystem restricted_system(const RootDatum& d, const IntMatrix& tau);

}  // namespace lkt
