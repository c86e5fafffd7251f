#include "lkt/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>

namespace lkt {

namespace {

constexpr std::size_t kMaxRoots = 4096;

IVec unit(std::size_t n, std::size_t i) {
  IVec e(n, 0);
  e[i] = 1;
  return e;
}

IVec reflect(const IVec& v, const IVec& root, const IVec& coroot) {
  Int c = dot(v, coroot);
  IVec r = v;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * root[i];
  return r;
}

}  // namespace

RootDatum::RootDatum(IntMatrix sr, IntMatrix sc, std::string name)
    : name_(std::move(name)), rank_(sr.cols()), simple_roots_(std::move(sr)), simple_coroots_(std::move(sc)) {
  if (simple_coroots_.cols() != rank_ || simple_coroots_.rows() != simple_roots_.rows())
    throw RankMismatch("simple roots and coroots have different shapes");
  const std::size_t r = simple_roots_.rows();
  IntMatrix a = cartan();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j && a(i, j) != 2) throw InvalidCartanMatrix("diagonal Cartan entry is not 2");
      if (i != j && a(i, j) > 0) throw InvalidCartanMatrix("positive off-diagonal Cartan entry");
      if (i != j && (a(i, j) == 0) != (a(j, i) == 0))
        throw InvalidCartanMatrix("Cartan matrix zero pattern is not symmetric");
    }
  if (r > 0 && lkt::rank(simple_roots_) < r) throw InvalidCartanMatrix("simple roots are linearly dependent");

  // Close positive roots under simple reflections, tracking coefficients.
  std::map<IVec, std::size_t> seen;
  std::vector<Root> pos;
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < r; ++i) {
    pos.push_back({simple_roots_.row(i), simple_coroots_.row(i), unit(r, i), true, 1});
    seen[pos.back().root] = i;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    std::size_t k = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      const Root& b = pos[k];
      Int c = dot(b.root, simple_coroots_.row(i));
      if (c == 0 || k == i) continue;
      IVec root = reflect(b.root, simple_roots_.row(i), simple_coroots_.row(i));
      IVec coeffs = b.coeffs;
      coeffs[i] -= c;
      if (std::any_of(coeffs.begin(), coeffs.end(), [](const Int& x) { return x < 0; })) continue;
      if (seen.count(root)) continue;
      IVec coroot = reflect(b.coroot, simple_coroots_.row(i), simple_roots_.row(i));
      Int h = 0;
      for (const auto& x : coeffs) h += x;
      pos.push_back({root, coroot, coeffs, true, h});
      seen[root] = pos.size() - 1;
      queue.push_back(pos.size() - 1);
      if (pos.size() > kMaxRoots) throw InvalidCartanMatrix("root system is not of finite type");
    }
  }
  std::stable_sort(pos.begin() + static_cast<long>(r), pos.end(), [](const Root& x, const Root& y) {
    if (x.height != y.height) return x.height < y.height;
    return x.coeffs > y.coeffs;
  });
  roots_ = pos;
  for (const auto& p : pos) {
    Root n = p;
    for (auto& x : n.root) x = -x;
    for (auto& x : n.coroot) x = -x;
    for (auto& x : n.coeffs) x = -x;
    n.positive = false;
    n.height = -p.height;
    roots_.push_back(n);
  }
  // Finite type: every coroot pairs with its root to 2 and reflections preserve the set.
  for (const auto& x : roots_)
    if (dot(x.root, x.coroot) != 2) throw InvalidCartanMatrix("root/coroot pairing is not 2");
  std::set<IVec> all;
  for (const auto& x : roots_) all.insert(x.root);
  for (const auto& x : roots_)
    for (std::size_t i = 0; i < r; ++i)
      if (!all.count(reflect(x.root, simple_roots_.row(i), simple_coroots_.row(i))))
        throw InvalidCartanMatrix("root set not closed under reflections");

  rho_ = zeros(rank_);
  rho_check_ = zeros(rank_);
  for (std::size_t k = 0; k < npos(); ++k)
    for (std::size_t j = 0; j < rank_; ++j) {
      rho_[j] += Rat(roots_[k].root[j]) / 2;
      rho_check_[j] += Rat(roots_[k].coroot[j]) / 2;
    }
}

IntMatrix RootDatum::cartan() const {
  const std::size_t r = simple_roots_.rows();
  IntMatrix a(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a(i, j) = dot(simple_roots_.row(i), simple_coroots_.row(j));
  return a;
}

int RootDatum::negative(int r) const {
  const int p = static_cast<int>(npos());
  return r < p ? r + p : r - p;
}

int RootDatum::find_root(const IVec& root) const {
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i].root == root) return static_cast<int>(i);
  return -1;
}

int RootDatum::find_coroot(const IVec& coroot) const {
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i].coroot == coroot) return static_cast<int>(i);
  return -1;
}

Rat RootDatum::invariant_form(const QVec& x, const QVec& y) const {
  Rat s = 0;
  for (const auto& a : roots_) {
    QVec c = to_rational(a.coroot);
    s += dot(x, c) * dot(y, c);
  }
  return s;
}

QVec RootDatum::coroot_of(const QVec& beta) const {
  Rat b = invariant_form(beta, beta);
  if (b == 0) throw std::invalid_argument("coroot_of: vector is isotropic");
  QVec v = zeros(rank_);
  for (const auto& a : roots_) {
    QVec c = to_rational(a.coroot);
    v = add(v, scale(dot(beta, c), c));
  }
  return scale(Rat(2) / b, v);
}

IntMatrix cartan_matrix(char type, int n) {
  if (n < 1) throw InvalidCartanMatrix("rank must be positive");
  IntMatrix a(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 2;
  auto link = [&](int i, int j, long aij, long aji) {
    a(i, j) = aij;
    a(j, i) = aji;
  };
  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1, -1);
      break;
    case 'B':
      if (n < 2) throw InvalidCartanMatrix("B needs rank >= 2");
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -2, -1);  // last root short
      break;
    case 'C':
      if (n < 2) throw InvalidCartanMatrix("C needs rank >= 2");
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -1, -2);  // last root long
      break;
    case 'D':
      if (n < 3) throw InvalidCartanMatrix("D needs rank >= 3");
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 3, n - 1, -1, -1);
      break;
    case 'F':
      if (n != 4) throw InvalidCartanMatrix("F has rank 4");
      link(0, 1, -1, -1);
      link(1, 2, -2, -1);
      link(2, 3, -1, -1);
      break;
    case 'G':
      if (n != 2) throw InvalidCartanMatrix("G has rank 2");
      link(0, 1, -1, -3);  // first root short
      break;
    default:
      throw InvalidCartanMatrix(std::string("unsupported type ") + type);
  }
  return a;
}

RootDatum build_datum(const std::string& spec, Isogeny isogeny) {
  struct Factor {
    char type;
    int rank;
  };
  std::vector<Factor> factors;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t end = spec.find('.', pos);
    if (end == std::string::npos) end = spec.size();
    std::string tok = spec.substr(pos, end - pos);
    if (tok.size() < 2 || !std::isalpha(static_cast<unsigned char>(tok[0])))
      throw std::invalid_argument("bad group token '" + tok + "' at column " + std::to_string(pos + 1));
    for (std::size_t i = 1; i < tok.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(tok[i])))
        throw std::invalid_argument("bad group token '" + tok + "' at column " + std::to_string(pos + 1));
    factors.push_back({static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0]))), std::stoi(tok.substr(1))});
    pos = end + 1;
  }
  if (factors.empty()) throw std::invalid_argument("empty group type string");
  std::size_t n = 0, r = 0;
  for (const auto& f : factors) {
    n += f.rank;
    if (f.type != 'T') r += f.rank;
  }
  IntMatrix roots(r, n), coroots(r, n);
  std::size_t off = 0, roff = 0;
  for (const auto& f : factors) {
    if (f.type == 'T') {
      off += f.rank;
      continue;
    }
    IntMatrix a = cartan_matrix(f.type, f.rank);
    for (int i = 0; i < f.rank; ++i)
      for (int j = 0; j < f.rank; ++j) {
        if (isogeny == Isogeny::SimplyConnected) {
          roots(roff + i, off + j) = a(i, j);
          coroots(roff + i, off + j) = (i == j) ? 1 : 0;
        } else {
          roots(roff + i, off + j) = (i == j) ? 1 : 0;
          coroots(roff + i, off + j) = a(j, i);
        }
      }
    off += f.rank;
    roff += f.rank;
  }
  return RootDatum(roots, coroots, spec);
}

RootDatum build_datum(const IntMatrix& sr, const IntMatrix& sc) { return RootDatum(sr, sc, "explicit"); }

RootDatum dual_datum(const RootDatum& d) {
  std::string name = d.name().empty() ? "" : "dual(" + d.name() + ")";
  if (d.name().rfind("dual(", 0) == 0) name = d.name().substr(5, d.name().size() - 6);
  return RootDatum(d.simple_coroots(), d.simple_roots(), name);
}

IVec act_on_character(const IntMatrix& tau, const IVec& x) { return tau.transpose() * x; }
QVec act_on_character(const IntMatrix& tau, const QVec& x) { return to_rational(tau.transpose()) * x; }

IntMatrix longest_element_matrix(const RootDatum& d) {
  const std::size_t n = d.rank();
  IntMatrix m = IntMatrix::identity(n);
  QVec v = d.rho();
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < d.semisimple_rank(); ++i) {
      QVec c = to_rational(d.simple_coroots().row(i));
      Rat p = dot(v, c);
      if (p > 0) {
        QVec a = to_rational(d.simple_roots().row(i));
        v = sub(v, scale(p, a));
        IntMatrix s = IntMatrix::identity(n);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) s(x, y) -= d.simple_coroots()(i, x) * d.simple_roots()(i, y);
        m = s * m;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return m;
}

InnerClass make_inner_class(const RootDatum& d, const IntMatrix& gamma) {
  const std::size_t n = d.rank();
  if (gamma.rows() != n || gamma.cols() != n) throw InvalidInnerClass("gamma has the wrong shape");
  if (gamma * gamma != IntMatrix::identity(n)) throw InvalidInnerClass("gamma is not an involution");
  InnerClass ic{d, gamma, {}};
  for (std::size_t i = 0; i < d.semisimple_rank(); ++i) {
    IVec gc = gamma * d.simple_coroots().row(i);
    IVec gr = act_on_character(gamma, d.simple_roots().row(i));
    int found = -1;
    for (std::size_t j = 0; j < d.semisimple_rank(); ++j)
      if (d.simple_coroots().row(j) == gc && d.simple_roots().row(j) == gr) found = static_cast<int>(j);
    if (found < 0) throw InvalidInnerClass("gamma does not permute the simple roots and coroots");
    ic.perm.push_back(found);
  }
  return ic;
}

InnerClass make_inner_class(const RootDatum& d, const std::string& keyword) {
  if (keyword == "c") return make_inner_class(d, IntMatrix::identity(d.rank()));
  if (keyword == "s") return make_inner_class(d, -longest_element_matrix(d));
  throw InvalidInnerClass("unknown inner class keyword '" + keyword + "'");
}

InnerClass dual_inner_class(const InnerClass& ic) {
  IntMatrix g = -(longest_element_matrix(ic.datum) * ic.gamma).transpose();
  return make_inner_class(dual_datum(ic.datum), g);
}

const char* root_type_name(RootType t) {
  switch (t) {
    case RootType::Imaginary:
      return "imaginary";
    case RootType::Real:
      return "real";
    default:
      return "complex";
  }
}

RootType classify_root(const RootDatum& d, const IntMatrix& tau, int r) {
  const IVec& a = d.roots()[r].root;
  IVec t = act_on_character(tau, a);
  if (t == a) return RootType::Imaginary;
  IVec m = a;
  for (auto& x : m) x = -x;
  if (t == m) return RootType::Real;
  return RootType::Complex;
}

RootSubsystem subsystem(const RootDatum& d, const std::vector<bool>& member) {
  RootSubsystem s;
  for (std::size_t i = 0; i < d.roots().size(); ++i)
    if (member[i]) {
      s.roots.push_back(static_cast<int>(i));
      if (d.roots()[i].positive) s.positive.push_back(static_cast<int>(i));
    }
  std::set<IVec> pos;
  for (int p : s.positive) pos.insert(d.roots()[p].root);
  for (int p : s.positive) {
    bool decomposable = false;
    for (int q : s.positive) {
      IVec rest = d.roots()[p].root;
      for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= d.roots()[q].root[j];
      if (pos.count(rest)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) s.simple.push_back(p);
  }
  return s;
}

RootSubsystem integral_system(const RootDatum& d, const RationalVector& lambda) {
  if (lambda.role != Role::Character) throw RolePairingError("integral_system expects a character-side vector");
  std::vector<bool> m(d.roots().size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Rat p = pair(lambda, RationalVector{Role::Cocharacter, to_rational(d.roots()[i].coroot)});
    m[i] = p.get_den() == 1;
  }
  return subsystem(d, m);
}

RootSubsystem singular_system(const RootDatum& d, const QVec& lambda) {
  std::vector<bool> m(d.roots().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = dot(lambda, to_rational(d.roots()[i].coroot)) == 0;
  return subsystem(d, m);
}

RootSubsystem imaginary_system(const RootDatum& d, const IntMatrix& tau) {
  std::vector<bool> m(d.roots().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = classify_root(d, tau, static_cast<int>(i)) == RootType::Imaginary;
  return subsystem(d, m);
}

namespace {

// Additive total order on restricted roots: height difference first, then coordinates.
int compare_restricted(const RootDatum& d, const IntMatrix& tau, const QVec& a) {
  QVec rc = d.rho_check();
  QVec trc = to_rational(tau) * rc;
  Rat h = dot(a, sub(rc, trc));
  if (h != 0) return h > 0 ? 1 : -1;
  for (const auto& x : a)
    if (x != 0) return x > 0 ? 1 : -1;
  return 0;
}

}  // namespace

RestrictedSystem restricted_system(const RootDatum& d, const IntMatrix& tau) {
  RestrictedSystem rs;
  auto imag = imaginary_system(d, tau);
  for (std::size_t i = 0; i < d.roots().size(); ++i) {
    bool orth = true;
    for (int j : imag.roots) orth = orth && dot(d.roots()[i].root, d.roots()[j].coroot) == 0;
    if (orth) rs.quasi.push_back(static_cast<int>(i));
  }
  std::set<QVec> seen;
  for (int i : rs.quasi) {
    QVec a = to_rational(d.roots()[i].root);
    QVec r = scale(Rat(1, 2), sub(a, act_on_character(tau, a)));
    if (is_zero(r) || seen.count(r)) continue;
    seen.insert(r);
    rs.roots.push_back(r);
  }
  std::sort(rs.roots.begin(), rs.roots.end(), [&](const QVec& x, const QVec& y) {
    int cx = compare_restricted(d, tau, x), cy = compare_restricted(d, tau, y);
    if (cx != cy) return cx > cy;
    return x < y;
  });
  for (const auto& r : rs.roots) {
    rs.positive.push_back(compare_restricted(d, tau, r) > 0);
    rs.coroots.push_back(d.coroot_of(r));
  }
  std::set<QVec> pos;
  for (std::size_t i = 0; i < rs.roots.size(); ++i)
    if (rs.positive[i]) pos.insert(rs.roots[i]);
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    if (!rs.positive[i]) continue;
    bool decomposable = false;
    for (const auto& q : pos)
      if (pos.count(sub(rs.roots[i], q))) decomposable = true;
    if (!decomposable) rs.simple.push_back(static_cast<int>(i));
  }
  const std::size_t k = rs.simple.size();
  if (k > 0) {
    QMatrix c(k, k);  // c(j,l) = <beta_l, beta_j^vee>
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) c(j, l) = dot(rs.roots[rs.simple[l]], rs.coroots[rs.simple[j]]);
    QMatrix ci = *inverse(c);
    for (std::size_t j = 0; j < k; ++j) {
      QVec w = zeros(d.rank());
      for (std::size_t l = 0; l < k; ++l) w = add(w, scale(ci(l, j), rs.roots[rs.simple[l]]));
      rs.fundamental.push_back(w);
    }
  }
  return rs;
}

}  // namespace lkt
