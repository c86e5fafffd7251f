#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lkt {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

struct FreePartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RolePairingError : std::logic_error {
  using std::logic_error::logic_error;
};

// Dense row-major matrix; T is Int or Rat.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols);
  static Matrix from_cols(const std::vector<std::vector<T>>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const;
  std::vector<T> col(std::size_t j) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const = default;
  auto operator<=>(const Matrix& o) const = default;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  std::vector<T> operator*(const std::vector<T>& v) const;

  bool is_zero() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using QMatrix = Matrix<Rat>;

extern template class Matrix<Int>;
extern template class Matrix<Rat>;

QMatrix to_rational(const IntMatrix& m);
QVec to_rational(const IVec& v);
// Throws if some entry is not an integer.
IntMatrix to_integer(const QMatrix& m);
IVec to_integer(const QVec& v);
bool is_integral(const QVec& v);

Int floor_of(const Rat& q);
Rat frac(const Rat& q);
QVec frac(const QVec& v);

QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Rat& c, const QVec& v);
QVec neg(const QVec& v);
Rat dot(const QVec& a, const QVec& b);
Int dot(const IVec& a, const IVec& b);
bool is_zero(const QVec& v);
QVec zeros(std::size_t n);
std::string str(const QVec& v);
std::string str(const IVec& v);

std::size_t rank(const QMatrix& m);
std::size_t rank(const IntMatrix& m);
Rat determinant(const QMatrix& m);
std::optional<QMatrix> inverse(const QMatrix& m);
// Particular solution of a x = b with free variables set to zero.
std::optional<QVec> solve_rational(const QMatrix& a, const QVec& b);
// Basis of {x : a x = 0} over the rationals (columns).
QMatrix rational_kernel(const QMatrix& a);

struct SmithForm {
  IntMatrix d, l, r;  // l * m * r == d
  std::size_t rank = 0;
};
SmithForm smith_normal_form(const IntMatrix& m);

// Basis of {x in Z^n : a x = 0}, as columns.
IntMatrix integer_kernel(const IntMatrix& a);
// Some integer solution of a x = b, if any.
std::optional<IVec> solve_integer(const IntMatrix& a, const IVec& b);
// Basis (rows) of the lattice spanned by the given rows.
IntMatrix lattice_basis(const IntMatrix& generators);

enum class Role { Cocharacter, Character };
const char* role_name(Role r);

// Rational vector tagged with the lattice it lives in.
struct RationalVector {
  Role role;
  QVec v;
};
// Canonical pairing between a cocharacter and a character.
Rat pair(const RationalVector& a, const RationalVector& b);

// prod Z/d_i with d_1 | d_2 | ..., each d_i >= 2.
// Ambient integer vectors map to coordinates through coord; gens are ambient lifts of the basis.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  FiniteAbelianGroup(std::vector<Int> factors, IntMatrix coord, IntMatrix gens);
  static FiniteAbelianGroup abstract(std::vector<Int> factors);

  const std::vector<Int>& factors() const { return factors_; }
  std::size_t ngens() const { return factors_.size(); }
  std::size_t ambient_rank() const { return coord_.cols(); }
  const IntMatrix& coord_matrix() const { return coord_; }
  const IntMatrix& generators() const { return gens_; }
  Int order() const;

  IVec reduce(const IVec& c) const;
  IVec coords(const IVec& ambient) const;
  IVec lift(const IVec& c) const;
  IVec add(const IVec& a, const IVec& b) const;
  IVec negate(const IVec& a) const;
  IVec zero() const { return IVec(ngens(), 0); }
  bool is_zero(const IVec& c) const;
  // All elements in lexicographic coordinate order.
  std::vector<IVec> elements() const;
  // <a, b^v> = sum a_i b_i / d_i mod 1, with b read in the dual basis.
  Rat pairing(const IVec& a, const IVec& b) const;

 private:
  std::vector<Int> factors_;
  IntMatrix coord_;
  IntMatrix gens_;
};

FiniteAbelianGroup quotient_group(std::size_t ambient_rank, const IntMatrix& sublattice_generators);
FiniteAbelianGroup dual_group(const FiniteAbelianGroup& g);

// Element of the dual of a target group, stored as dual-basis coordinates.
struct GroupCharacter {
  const FiniteAbelianGroup* group;
  IVec value;
  Rat operator()(const IVec& element) const { return group->pairing(element, value); }
};

// Subgroup of an abstract group (factors), given by elements in coordinates.
struct Subgroup {
  std::vector<Int> parent;
  FiniteAbelianGroup group;  // abstract presentation of the subgroup
  IntMatrix embed;           // column j: image of generator j in parent coordinates
  std::vector<IVec> members; // parent coordinates, sorted
  IVec parent_element(const IVec& c) const;
  std::optional<IVec> coords_of(const IVec& parent_elt) const;
};
Subgroup make_subgroup(const std::vector<Int>& parent_factors, const std::vector<IVec>& elements);

// Homomorphism between abstract groups, images of source generators as columns.
struct GroupHom {
  std::vector<Int> source, target;
  IntMatrix m;
  IVec apply(const IVec& x) const;
  bool injective() const;
  bool surjective() const;
  Int image_order() const;
  std::vector<IVec> kernel() const;
  GroupHom dual() const;
};

std::vector<IVec> enumerate_box(const std::vector<Int>& factors);

}  // namespace lkt
