#include "lkt/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace lkt {

namespace {

int sign_of(const std::vector<int>& perm) {
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}

std::vector<std::vector<int>> involutions(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool inv = true;
    for (int i = 0; i < n; ++i) inv = inv && p[p[i]] == i;
    if (inv) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

MatrixOracle::MatrixOracle(OracleGroup g, int n) : g_(g), n_(n) {
  if (n < 2) throw std::invalid_argument("oracle needs n >= 2");
  RootDatum d = build_datum("A" + std::to_string(n - 1), Isogeny::SimplyConnected);
  for (std::size_t r = 0; r < d.npos(); ++r) {
    const IVec& c = d.roots()[r].coeffs;
    int a = -1, b = -1;
    for (int i = 0; i < n - 1; ++i)
      if (c[i] != 0) {
        if (a < 0) a = i;
        b = i + 1;
      }
    positive_roots_.push_back({a, b});
  }

  // Every class has a representative with exponents in (1/4n)Z.
  const int den = 4 * n;
  std::vector<Monomial> pts;
  for (const auto& perm : involutions(n)) {
    std::vector<int> digits(n, 0);
    for (;;) {
      QVec e(n);
      for (int i = 0; i < n; ++i) {
        e[i] = Rat(digits[i], den);
        e[i].canonicalize();
      }
      Monomial m = canonical({perm, e});
      Monomial sq = multiply(m, m);
      // In PGL(n) every class has a representative squaring to the identity matrix.
      bool ok = g_ == OracleGroup::SL ? scalar_of(sq).has_value() : sq == diagonal(zeros(n));
      if (ok && g_ == OracleGroup::SL) {
        Rat total = 0;
        for (const auto& x : m.exps) total += x;
        ok = frac(total) == (sign_of(perm) < 0 ? Rat(1, 2) : Rat(0));
      }
      if (ok) pts.push_back(m);
      int k = 0;
      while (k < n && ++digits[k] == den) digits[k++] = 0;
      if (k == n) break;
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::map<Monomial, int> index;
  for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = static_cast<int>(i);

  std::vector<int> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto findp = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  // Conjugation by diag(e(s)) with s a generator of (1/4n)Z^n; in PGL(n) also the scalar -1.
  std::vector<std::pair<Monomial, bool>> moves;
  for (int k = 0; k < n; ++k) {
    QVec s = zeros(n);
    s[k] = Rat(1, den);
    moves.push_back({diagonal(s), true});
  }
  if (g_ == OracleGroup::PGL) moves.push_back({diagonal(QVec(n, Rat(1, 2))), false});
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (const auto& [h, conj] : moves) {
      Monomial c = conj ? multiply(multiply(h, pts[i]), inverse(h)) : multiply(h, pts[i]);
      auto it = index.find(c);
      if (it == index.end()) throw std::logic_error("oracle grid is not closed under conjugation");
      int a = findp(static_cast<int>(i)), b = findp(it->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, int> class_index;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    int r = findp(static_cast<int>(i));
    auto it = class_index.find(r);
    if (it == class_index.end()) {
      it = class_index.emplace(r, static_cast<int>(classes_.size())).first;
      classes_.push_back({pts[r], scalar_of(multiply(pts[r], pts[r])), grading(pts[r])});
    }
    members_.push_back(pts[i]);
    member_class_.push_back(it->second);
  }
}

Monomial MatrixOracle::canonical(const Monomial& x) const { return {x.perm, frac(x.exps)}; }

Monomial MatrixOracle::multiply(const Monomial& x, const Monomial& y) const {
  Monomial m{std::vector<int>(n_), QVec(n_)};
  for (int j = 0; j < n_; ++j) {
    m.perm[j] = x.perm[y.perm[j]];
    m.exps[j] = x.exps[y.perm[j]] + y.exps[j];
  }
  return canonical(m);
}

Monomial MatrixOracle::inverse(const Monomial& x) const {
  Monomial m{std::vector<int>(n_), QVec(n_)};
  for (int j = 0; j < n_; ++j) {
    m.perm[x.perm[j]] = j;
    m.exps[x.perm[j]] = -x.exps[j];
  }
  return canonical(m);
}

Monomial MatrixOracle::diagonal(const QVec& exps) const {
  std::vector<int> id(n_);
  std::iota(id.begin(), id.end(), 0);
  return canonical({id, exps});
}

std::optional<Rat> MatrixOracle::scalar_of(const Monomial& x) const {
  Monomial m = canonical(x);
  for (int j = 0; j < n_; ++j)
    if (m.perm[j] != j || m.exps[j] != m.exps[0]) return std::nullopt;
  return g_ == OracleGroup::SL ? m.exps[0] : Rat(0);
}

Monomial MatrixOracle::torus(const QVec& t) const {
  if (static_cast<int>(t.size()) != n_ - 1) throw std::invalid_argument("torus exponent has the wrong rank");
  QVec e = zeros(n_);
  for (int j = 0; j < n_ - 1; ++j) {
    if (g_ == OracleGroup::SL) {
      // coroot j is e_j - e_{j+1}
      e[j] += t[j];
      e[j + 1] -= t[j];
    } else {
      // fundamental coweight j is e_0 + ... + e_j modulo scalars
      for (int i = 0; i <= j; ++i) e[i] += t[j];
    }
  }
  return diagonal(e);
}

Monomial MatrixOracle::sigma_simple(int i) const {
  Monomial m = diagonal(zeros(n_));
  m.perm[i] = i + 1;
  m.perm[i + 1] = i;
  m.exps[i] = Rat(1, 2);  // entry -1 in row i+1, column i
  m.exps[i + 1] = 0;      // entry 1 in row i, column i+1
  return canonical(m);
}

Monomial MatrixOracle::from_tits(const WeylGroup& W, const TitsElement& e) const {
  Monomial m = torus(e.t);
  for (int s : W.word(e.w)) m = multiply(m, sigma_simple(s));
  return m;
}

int MatrixOracle::class_of(const Monomial& x) const {
  Monomial m = canonical(x);
  if (g_ == OracleGroup::PGL) {
    // Rescale so that the square is the identity matrix.
    Monomial sq = multiply(m, m);
    for (int j = 0; j < n_; ++j)
      if (sq.perm[j] != j || sq.exps[j] != sq.exps[0]) return -1;
    m = multiply(diagonal(QVec(n_, -sq.exps[0] / 2)), m);
  }
  auto it = std::lower_bound(members_.begin(), members_.end(), m);
  if (it == members_.end() || !(*it == m)) return -1;
  return member_class_[it - members_.begin()];
}

std::vector<int> MatrixOracle::grading(const Monomial& x) const {
  std::vector<int> out;
  for (auto [a, b] : positive_roots_) {
    if (x.perm[a] != a || x.perm[b] != b) {
      out.push_back(-1);
      continue;
    }
    out.push_back(frac(x.exps[a] - x.exps[b]) == Rat(1, 2) ? 1 : 0);
  }
  return out;
}

}  // namespace lkt
