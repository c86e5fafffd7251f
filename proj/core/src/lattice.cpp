#include "lkt/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace lkt {

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) a_.emplace_back(x);
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_cols(const std::vector<std::vector<T>>& cols, std::size_t rows) {
  return from_rows(cols, rows).transpose();
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

template <class T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
  std::vector<T> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
Matrix<T> Matrix<T>::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const T& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += x * o(k, j);
    }
  return p;
}

template <class T>
Matrix<T> Matrix<T>::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  Matrix s = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += o.a_[i];
  return s;
}

template <class T>
Matrix<T> Matrix<T>::operator-(const Matrix& o) const {
  return *this + (-o);
}

template <class T>
Matrix<T> Matrix<T>::operator-() const {
  Matrix s = *this;
  for (auto& x : s.a_) x = -x;
  return s;
}

template <class T>
std::vector<T> Matrix<T>::operator*(const std::vector<T>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<T> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

template <class T>
bool Matrix<T>::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const T& x) { return x == 0; });
}

template <class T>
std::string Matrix<T>::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

template class Matrix<Int>;
template class Matrix<Rat>;

QMatrix to_rational(const IntMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

QVec to_rational(const IVec& v) {
  QVec q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
  return q;
}

IntMatrix to_integer(const QMatrix& m) {
  IntMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::domain_error("non-integral matrix entry");
      z(i, j) = m(i, j).get_num();
    }
  return z;
}

IVec to_integer(const QVec& v) {
  IVec z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw std::domain_error("non-integral vector entry");
    z[i] = v[i].get_num();
  }
  return z;
}

bool is_integral(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& q) { return q.get_den() == 1; });
}

Int floor_of(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rat frac(const Rat& q) {
  Rat r = q - Rat(floor_of(q));
  r.canonicalize();
  return r;
}

QVec frac(const QVec& v) {
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = frac(v[i]);
  return r;
}

QVec add(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec sub(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec scale(const Rat& c, const QVec& v) {
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

QVec neg(const QVec& v) { return scale(Rat(-1), v); }

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int dot(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& q) { return q == 0; });
}

QVec zeros(std::size_t n) { return QVec(n, Rat(0)); }

std::string str(const QVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

std::string str(const IVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    Rat inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const QMatrix& m) {
  QMatrix w = m;
  return rref(w).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

Rat determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  QMatrix w = m;
  Rat det = 1;
  const std::size_t n = w.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(c, j), w(p, j));
      det = -det;
    }
    det *= w(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (w(i, c) == 0) continue;
      Rat f = w(i, c) / w(c, c);
      for (std::size_t j = c; j < n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  if (n == 0) return QMatrix(0, 0);
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::optional<QVec> solve_rational(const QMatrix& a, const QVec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  QVec x = zeros(a.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
  return x;
}

QMatrix rational_kernel(const QMatrix& a) {
  QMatrix w = a;
  auto piv = rref(w);
  std::vector<bool> is_piv(a.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_piv[f]) continue;
    QVec v = zeros(a.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -w(r, f);
    basis.push_back(v);
  }
  return QMatrix::from_cols(basis, a.cols());
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_dst -= q * row_src
void axpy_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}
void axpy_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}
Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), 0};
  IntMatrix& d = s.d;
  const std::size_t nr = d.rows(), nc = d.cols();
  std::size_t k = 0;
  for (; k < std::min(nr, nc); ++k) {
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (k,k).
      std::size_t pi = nr, pj = nc;
      for (std::size_t i = k; i < nr; ++i)
        for (std::size_t j = k; j < nc; ++j)
          if (d(i, j) != 0 && (pi == nr || abs(d(i, j)) < abs(d(pi, pj)))) pi = i, pj = j;
      if (pi == nr) break;
      swap_rows(d, k, pi);
      swap_rows(s.l, k, pi);
      swap_cols(d, k, pj);
      swap_cols(s.r, k, pj);
      bool clean = true;
      for (std::size_t i = k + 1; i < nr; ++i) {
        if (d(i, k) == 0) continue;
        Int q = fdiv(d(i, k), d(k, k));
        axpy_row(d, i, k, q);
        axpy_row(s.l, i, k, q);
        if (d(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < nc; ++j) {
        if (d(k, j) == 0) continue;
        Int q = fdiv(d(k, j), d(k, k));
        axpy_col(d, j, k, q);
        axpy_col(s.r, j, k, q);
        if (d(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility by the pivot on the trailing block.
      std::size_t bad = nr;
      for (std::size_t i = k + 1; i < nr && bad == nr; ++i)
        for (std::size_t j = k + 1; j < nc; ++j)
          if (d(i, j) % d(k, k) != 0) {
            bad = i;
            break;
          }
      if (bad == nr) break;
      axpy_row(d, k, bad, Int(-1));
      axpy_row(s.l, k, bad, Int(-1));
    }
    if (d(k, k) == 0) break;
    if (d(k, k) < 0) {
      for (std::size_t j = 0; j < nc; ++j) d(k, j) = -d(k, j);
      for (std::size_t j = 0; j < nr; ++j) s.l(k, j) = -s.l(k, j);
    }
  }
  s.rank = 0;
  for (std::size_t i = 0; i < std::min(nr, nc); ++i)
    if (d(i, i) != 0) ++s.rank;
  return s;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  std::vector<IVec> cols;
  for (std::size_t j = s.rank; j < a.cols(); ++j) cols.push_back(s.r.col(j));
  return IntMatrix::from_cols(cols, a.cols());
}

std::optional<IVec> solve_integer(const IntMatrix& a, const IVec& b) {
  SmithForm s = smith_normal_form(a);
  IVec lb = s.l * b;
  IVec y(a.cols(), 0);
  for (std::size_t i = 0; i < lb.size(); ++i) {
    if (i < s.rank) {
      if (lb[i] % s.d(i, i) != 0) return std::nullopt;
      y[i] = lb[i] / s.d(i, i);
    } else if (lb[i] != 0) {
      return std::nullopt;
    }
  }
  return s.r * y;
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  SmithForm s = smith_normal_form(generators);
  auto rinv = inverse(to_rational(s.r));
  IntMatrix ri = to_integer(*rinv);
  IntMatrix basis(s.rank, generators.cols());
  for (std::size_t i = 0; i < s.rank; ++i)
    for (std::size_t j = 0; j < generators.cols(); ++j) basis(i, j) = s.d(i, i) * ri(i, j);
  return basis;
}

const char* role_name(Role r) { return r == Role::Cocharacter ? "cocharacter" : "character"; }

Rat pair(const RationalVector& a, const RationalVector& b) {
  if (a.role == b.role)
    throw RolePairingError(std::string("cannot pair two ") + role_name(a.role) + " vectors");
  return dot(a.v, b.v);
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> factors, IntMatrix coord, IntMatrix gens)
    : factors_(std::move(factors)), coord_(std::move(coord)), gens_(std::move(gens)) {}

FiniteAbelianGroup FiniteAbelianGroup::abstract(std::vector<Int> factors) {
  const std::size_t k = factors.size();
  return FiniteAbelianGroup(std::move(factors), IntMatrix::identity(k), IntMatrix::identity(k));
}

Int FiniteAbelianGroup::order() const {
  Int o = 1;
  for (const auto& d : factors_) o *= d;
  return o;
}

IVec FiniteAbelianGroup::reduce(const IVec& c) const {
  IVec r(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    mpz_fdiv_r(r[i].get_mpz_t(), c[i].get_mpz_t(), factors_[i].get_mpz_t());
  }
  return r;
}

IVec FiniteAbelianGroup::coords(const IVec& ambient) const { return reduce(coord_ * ambient); }

IVec FiniteAbelianGroup::lift(const IVec& c) const {
  IVec v(ambient_rank(), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[i] * gens_(i, j);
  return v;
}

IVec FiniteAbelianGroup::add(const IVec& a, const IVec& b) const {
  IVec s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return reduce(s);
}

IVec FiniteAbelianGroup::negate(const IVec& a) const {
  IVec s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = -a[i];
  return reduce(s);
}

bool FiniteAbelianGroup::is_zero(const IVec& c) const {
  return reduce(c) == zero();
}

std::vector<IVec> FiniteAbelianGroup::elements() const { return enumerate_box(factors_); }

Rat FiniteAbelianGroup::pairing(const IVec& a, const IVec& b) const {
  Rat s = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) s += Rat(a[i] * b[i]) / Rat(factors_[i]);
  return frac(s);
}

std::vector<IVec> enumerate_box(const std::vector<Int>& factors) {
  std::vector<IVec> out;
  IVec c(factors.size(), 0);
  for (;;) {
    out.push_back(c);
    std::size_t i = factors.size();
    while (i > 0) {
      --i;
      if (++c[i] < factors[i]) break;
      c[i] = 0;
      if (i == 0) return out;
    }
    if (factors.empty()) return out;
  }
}

FiniteAbelianGroup quotient_group(std::size_t n, const IntMatrix& gens) {
  if (gens.cols() != n) throw std::invalid_argument("quotient_group: generator width mismatch");
  SmithForm s = smith_normal_form(gens);
  if (s.rank < n) throw FreePartError("quotient has a free part: sublattice rank " +
                                      std::to_string(s.rank) + " < " + std::to_string(n));
  auto rinv = to_integer(*inverse(to_rational(s.r)));
  std::vector<Int> factors;
  std::vector<IVec> coord_rows, gen_rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.d(i, i) == 1) continue;
    factors.push_back(s.d(i, i));
    coord_rows.push_back(s.r.col(i));
    gen_rows.push_back(rinv.row(i));
  }
  return FiniteAbelianGroup(factors, IntMatrix::from_rows(coord_rows, n),
                            IntMatrix::from_rows(gen_rows, n));
}

FiniteAbelianGroup dual_group(const FiniteAbelianGroup& g) {
  return FiniteAbelianGroup::abstract(g.factors());
}

IVec Subgroup::parent_element(const IVec& c) const {
  if (parent.empty()) return {};
  return FiniteAbelianGroup::abstract(parent).reduce(embed * c);
}

std::optional<IVec> Subgroup::coords_of(const IVec& parent_elt) const {
  IVec target = FiniteAbelianGroup::abstract(parent).reduce(parent_elt);
  for (const auto& c : group.elements())
    if (parent_element(c) == target) return c;
  return std::nullopt;
}

Subgroup make_subgroup(const std::vector<Int>& parent, const std::vector<IVec>& elements) {
  const std::size_t k = parent.size();
  FiniteAbelianGroup par = FiniteAbelianGroup::abstract(parent);
  std::vector<IVec> gen_rows = elements;
  for (std::size_t i = 0; i < k; ++i) {
    IVec e(k, 0);
    e[i] = parent[i];
    gen_rows.push_back(e);
  }
  Subgroup out;
  out.parent = parent;
  if (k == 0) {
    out.group = FiniteAbelianGroup::abstract({});
    out.embed = IntMatrix(0, 0);
    out.members = {IVec{}};
    return out;
  }
  IntMatrix basis = lattice_basis(IntMatrix::from_rows(gen_rows, k));  // k x k, rows
  // Coefficients of parent[i] e_i in the basis give the relations.
  QMatrix bt = to_rational(basis).transpose();
  std::vector<IVec> rel;
  for (std::size_t i = 0; i < k; ++i) {
    QVec e = zeros(k);
    e[i] = Rat(parent[i]);
    rel.push_back(to_integer(*solve_rational(bt, e)));
  }
  FiniteAbelianGroup q = quotient_group(k, IntMatrix::from_rows(rel, k));
  IntMatrix embed(k, q.ngens());
  for (std::size_t j = 0; j < q.ngens(); ++j) {
    IVec coeff = q.generators().row(j);
    IVec v(k, 0);
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t c = 0; c < k; ++c) v[c] += coeff[l] * basis(l, c);
    v = par.reduce(v);
    for (std::size_t c = 0; c < k; ++c) embed(c, j) = v[c];
  }
  out.group = FiniteAbelianGroup::abstract(q.factors());
  out.embed = embed;
  std::set<IVec> mem;
  for (const auto& c : out.group.elements()) mem.insert(par.reduce(embed * c));
  out.members.assign(mem.begin(), mem.end());
  return out;
}

IVec GroupHom::apply(const IVec& x) const {
  IVec y = m * x;
  return FiniteAbelianGroup::abstract(target).reduce(y);
}

Int GroupHom::image_order() const {
  std::set<IVec> img;
  for (const auto& a : enumerate_box(source)) img.insert(apply(a));
  return Int(static_cast<unsigned long>(img.size()));
}

std::vector<IVec> GroupHom::kernel() const {
  std::vector<IVec> k;
  FiniteAbelianGroup t = FiniteAbelianGroup::abstract(target);
  for (const auto& a : enumerate_box(source))
    if (t.is_zero(apply(a))) k.push_back(a);
  return k;
}

bool GroupHom::injective() const { return kernel().size() == 1; }

bool GroupHom::surjective() const {
  return image_order() == FiniteAbelianGroup::abstract(target).order();
}

GroupHom GroupHom::dual() const {
  GroupHom d{target, source, IntMatrix(source.size(), target.size())};
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < source.size(); ++j) {
      Int num = m(i, j) * source[j];
      if (num % target[i] != 0) throw std::logic_error("dual of an ill-defined homomorphism");
      Int c = num / target[i];
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), source[j].get_mpz_t());
      d.m(j, i) = c;
    }
  return d;
}

}  // namespace lkt
