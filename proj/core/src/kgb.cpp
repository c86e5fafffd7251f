#include "lkt/kgb.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace lkt {

namespace {

int mod2(const Int& v) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), 2);
  return static_cast<int>(r.get_si());
}

Int twice_pairing(const IVec& root, const QVec& t) {
  Rat v = 2 * dot(to_rational(root), t);
  if (v.get_den() != 1) throw std::logic_error("half-integrality of an imaginary pairing fails");
  return v.get_num();
}

// Largest j with beta - j alpha a root.
int string_depth(const RootDatum& d, int beta, int alpha) {
  int j = 0;
  IVec cur = d.roots()[beta].root;
  for (;;) {
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= d.roots()[alpha].root[i];
    if (d.find_root(cur) < 0) return j;
    ++j;
  }
}

}  // namespace

std::string str(const KgbElement& x) { return "(" + std::to_string(x.fiber) + "," + str(x.t) + ")"; }

Kgb::Kgb(const InnerClass& ic) : W_(ic), T_(W_) {
  auto tis = twisted_involutions(W_);
  std::sort(tis.begin(), tis.end(), [&](const TwistedInvolution& a, const TwistedInvolution& b) {
    if (W_.length(a.w) != W_.length(b.w)) return W_.length(a.w) < W_.length(b.w);
    return W_.word(a.w) < W_.word(b.w);
  });
  fiber_by_weyl_.assign(W_.size(), -1);
  for (std::size_t k = 0; k < tis.size(); ++k) {
    FiberData f;
    f.w = tis[k].w;
    f.tau = tis[k].tau;
    fibers_.push_back(std::move(f));
    fiber_by_weyl_[tis[k].w] = static_cast<int>(k);
  }
  for (std::size_t k = 0; k < fibers_.size(); ++k) build_fiber(static_cast<int>(k));
  compute_base_gradings();
}

int Kgb::fiber_of_weyl(int w) const { return fiber_by_weyl_[w]; }

int Kgb::fiber_of_tau(const IntMatrix& tau) const {
  for (std::size_t k = 0; k < fibers_.size(); ++k)
    if (fibers_[k].tau == tau) return static_cast<int>(k);
  return -1;
}

void Kgb::build_fiber(int k) {
  FiberData& f = fibers_[k];
  const RootDatum& d = datum();
  const std::size_t n = d.rank();
  const IntMatrix id = IntMatrix::identity(n);
  f.plus = smith_normal_form(id + f.tau);
  f.basepoint = T_.multiply(T_.torus(scale(Rat(1, 2), d.rho_check())), T_.multiply(T_.sigma(f.w), T_.delta()));
  TitsElement sq = T_.multiply(f.basepoint, f.basepoint);
  if (sq.w != 0 || sq.flag) throw std::logic_error("basepoint square is not a torus element");
  f.basepoint_square = sq.t;
  for (std::size_t r = 0; r < d.npos(); ++r) {
    switch (classify_root(d, f.tau, static_cast<int>(r))) {
      case RootType::Imaginary:
        f.imaginary.push_back(static_cast<int>(r));
        break;
      case RootType::Real:
        f.real.push_back(static_cast<int>(r));
        break;
      default:
        f.complex.push_back(static_cast<int>(r));
    }
  }
  // U_tau = M / (1+tau) X_*, M = {m in X_*^tau (x) Q : <alpha, m> integral}.
  IntMatrix b = integer_kernel(id - f.tau);
  const std::size_t kdim = b.cols();
  IntMatrix nmat = d.simple_roots() * b;
  if (kdim > 0 && lkt::rank(nmat) < kdim) {
    f.finite = false;
    f.infinite_reason = "fiber " + std::to_string(k) + " has a central torus in the +1 eigenspace";
    return;
  }
  SmithForm s = smith_normal_form(nmat);
  QMatrix scaled = to_rational(b * s.r);
  for (std::size_t j = 0; j < kdim; ++j)
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) /= Rat(s.d(j, j));
  f.m_basis = scaled;
  std::vector<IVec> rels;
  for (std::size_t j = 0; j < n; ++j) {
    QVec target = to_rational((id + f.tau).col(j));
    auto c = solve_rational(f.m_basis, target);
    if (!c) throw std::logic_error("(1+tau) column outside M");
    rels.push_back(to_integer(*c));
  }
  f.u = quotient_group(kdim, IntMatrix::from_rows(rels, kdim));
  f.finite = true;
}

QVec Kgb::normalize(int k, const QVec& t) const {
  const FiberData& f = fibers_[k];
  const std::size_t n = rank();
  QVec pt = to_rational(f.plus.l * (IntMatrix::identity(n) + f.tau)) * t;
  QVec q = zeros(n);
  for (std::size_t i = 0; i < f.plus.rank; ++i) q[i] = frac(pt[i] / Rat(f.plus.d(i, i)));
  return frac(to_rational(f.plus.r) * q);
}

KgbElement Kgb::basepoint(int k) const { return {k, zeros(rank())}; }

TitsElement Kgb::strong_involution(const KgbElement& x) const {
  return T_.multiply(T_.torus(x.t), fibers_[x.fiber].basepoint);
}

KgbElement Kgb::from_tits(const TitsElement& g) const {
  if (!g.flag) throw FiberMismatch("element lies in the identity component");
  int k = fiber_of_weyl(g.w);
  if (k < 0) throw FiberMismatch("Weyl part is not a twisted involution");
  return make(k, sub(g.t, fibers_[k].basepoint.t));
}

QVec Kgb::square(const KgbElement& x) const {
  TitsElement g = strong_involution(x);
  TitsElement sq = T_.multiply(g, g);
  if (sq.w != 0 || sq.flag) throw std::logic_error("square of a strong involution is not toral");
  return sq.t;
}

bool Kgb::is_central(const QVec& z) const {
  for (std::size_t i = 0; i < datum().semisimple_rank(); ++i)
    if (dot(to_rational(datum().simple_roots().row(i)), z).get_den() != 1) return false;
  return true;
}

QVec Kgb::z_star() const { return frac(datum().rho_check()); }

RootType Kgb::root_type(int k, int root) const { return classify_root(datum(), fibers_[k].tau, root); }

int Kgb::base_grading(int k, int root) const {
  int g = fibers_[k].base_grading.empty() ? -1 : fibers_[k].base_grading[root];
  if (g < 0) throw NotImaginary("root " + std::to_string(root) + " is not imaginary at fiber " + std::to_string(k));
  return g;
}

int Kgb::grading(const KgbElement& x, int root) const {
  int b = base_grading(x.fiber, root);
  return mod2(Int(b) + twice_pairing(datum().roots()[root].root, x.t));
}

std::vector<int> Kgb::simple_imaginary(int k) const { return imaginary_system(datum(), fibers_[k].tau).simple; }

KgbElement Kgb::cross(int w, const KgbElement& x) const {
  return from_tits(T_.conjugate(T_.sigma(w), strong_involution(x)));
}

KgbElement Kgb::cayley(int root, const KgbElement& x) const {
  if (root_type(x.fiber, root) != RootType::Imaginary)
    throw NotImaginary("Cayley transform needs an imaginary root");
  if (!is_noncompact(x, root)) throw NotNoncompact("Cayley transform needs a noncompact root");
  return from_tits(T_.multiply(T_.sigma_root(root), strong_involution(x)));
}

std::vector<KgbElement> Kgb::inverse_cayley(int root, const KgbElement& x) const {
  if (root_type(x.fiber, root) != RootType::Real) throw std::invalid_argument("inverse Cayley needs a real root");
  int target = fiber_of_weyl(W_.multiply(W_.reflection(root), fibers_[x.fiber].w));
  if (target < 0) throw std::logic_error("reflected twisted involution missing");
  std::vector<KgbElement> out;
  for (const auto& c : fiber_with_square(target, square(x)))
    if (is_noncompact(c, root) && cayley(root, c) == x) out.push_back(c);
  return out;
}

std::vector<KgbElement> Kgb::fiber_with_square(int k, const QVec& z) const {
  const FiberData& f = fibers_[k];
  const std::size_t n = rank();
  const IntMatrix id = IntMatrix::identity(n);
  const IntMatrix minus = id - f.tau, plus = id + f.tau;
  QVec c = sub(z, f.basepoint_square);
  QVec rhs = neg(to_rational(minus) * c);
  if (!is_integral(rhs)) return {};
  auto x = solve_integer(minus, to_integer(rhs));
  if (!x) return {};
  QVec m0 = add(c, to_rational(*x));
  IntMatrix b = integer_kernel(minus);
  const std::size_t kdim = b.cols();
  std::vector<IVec> rels;
  for (std::size_t j = 0; j < n; ++j) rels.push_back(to_integer(*solve_rational(to_rational(b), to_rational(plus.col(j)))));
  FiniteAbelianGroup u0 = quotient_group(kdim, IntMatrix::from_rows(rels, kdim));
  std::set<KgbElement> out;
  for (const auto& u : u0.elements()) {
    IVec lifted = u0.lift(u);
    QVec m = add(m0, to_rational(b * lifted));
    out.insert(make(k, scale(Rat(1, 2), m)));
  }
  return {out.begin(), out.end()};
}

const FiniteAbelianGroup& Kgb::u_tau(int k) const {
  if (!fibers_[k].finite) throw InfiniteFiber(fibers_[k].infinite_reason);
  return fibers_[k].u;
}

QVec Kgb::u_representative(int k, const IVec& u) const {
  const FiniteAbelianGroup& g = u_tau(k);
  return scale(Rat(1, 2), fibers_[k].m_basis * to_rational(g.lift(u)));
}

KgbElement Kgb::act(const IVec& u, const KgbElement& x) const { return make(x.fiber, add(x.t, u_representative(x.fiber, u))); }

IVec Kgb::d_tau(const KgbElement& x) const { return u_class(x.fiber, x.t); }

IVec Kgb::u_class(int k, const QVec& t) const {
  const FiberData& f = fibers_[k];
  const FiniteAbelianGroup& g = u_tau(k);
  QVec pt = to_rational(IntMatrix::identity(rank()) + f.tau) * t;
  auto c = solve_rational(f.m_basis, pt);
  if (!c || !is_integral(*c)) throw std::invalid_argument("torus part does not define a strong involution");
  return g.coords(to_integer(*c));
}

bool Kgb::in_u0(int k, const IVec& u) const {
  const FiniteAbelianGroup& g = u_tau(k);
  return is_integral(fibers_[k].m_basis * to_rational(g.lift(u)));
}

std::vector<KgbElement> Kgb::enumerate_fiber(int k) const {
  const FiniteAbelianGroup& g = u_tau(k);
  std::vector<KgbElement> out;
  for (const auto& u : g.elements()) out.push_back(make(k, u_representative(k, u)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<KgbElement> Kgb::enumerate(const std::optional<QVec>& z) const {
  std::vector<KgbElement> out;
  for (std::size_t k = 0; k < fibers_.size(); ++k) {
    auto part = z ? fiber_with_square(static_cast<int>(k), frac(*z)) : enumerate_fiber(static_cast<int>(k));
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<QVec> Kgb::squares_in_fiber(int k) const {
  std::set<QVec> s;
  for (const auto& x : enumerate_fiber(k)) s.insert(square(x));
  return {s.begin(), s.end()};
}

std::vector<int> Kgb::conjugacy_labels(const std::vector<KgbElement>& elems) const {
  std::map<KgbElement, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  std::vector<int> parent(elems.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto findp = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) {
    a = findp(a), b = findp(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const KgbElement& x = elems[i];
    for (std::size_t s = 0; s < datum().semisimple_rank(); ++s) {
      auto it = index.find(cross_simple(s, x));
      if (it != index.end()) unite(static_cast<int>(i), it->second);
      if (root_type(x.fiber, static_cast<int>(s)) == RootType::Imaginary && is_noncompact(x, static_cast<int>(s))) {
        auto jt = index.find(cayley(static_cast<int>(s), x));
        if (jt != index.end()) unite(static_cast<int>(i), jt->second);
      }
    }
  }
  std::map<int, int> relabel;
  std::vector<int> out(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    int r = findp(static_cast<int>(i));
    auto it = relabel.find(r);
    if (it == relabel.end()) it = relabel.emplace(r, static_cast<int>(relabel.size())).first;
    out[i] = it->second;
  }
  return out;
}

int Kgb::component_label(const KgbElement& x) const {
  QVec z = frac(square(x));
  std::lock_guard<std::mutex> lock(label_guard_);
  auto it = label_cache_.find(z);
  if (it == label_cache_.end()) {
    auto elems = enumerate(z);
    auto labels = conjugacy_labels(elems);
    std::map<KgbElement, int> m;
    for (std::size_t i = 0; i < elems.size(); ++i) m[elems[i]] = labels[i];
    it = label_cache_.emplace(z, std::move(m)).first;
  }
  auto jt = it->second.find(x);
  if (jt == it->second.end()) throw std::logic_error("KGB point missing from its square class");
  return jt->second;
}

std::vector<int> Kgb::gradings_from_cross(int k, std::size_t s) const {
  const RootDatum& d = datum();
  KgbElement y = cross_simple(s, basepoint(k));
  std::vector<int> g(d.roots().size(), -1);
  for (std::size_t r = 0; r < d.roots().size(); ++r) {
    if (classify_root(d, fibers_[y.fiber].tau, static_cast<int>(r)) != RootType::Imaginary) continue;
    int src = W_.act_on_root(W_.simple(s), static_cast<int>(r));
    g[r] = mod2(Int(base_grading(k, src)) + twice_pairing(d.roots()[r].root, y.t));
  }
  return g;
}

std::vector<int> Kgb::gradings_from_cayley(int k, std::size_t s) const {
  const RootDatum& d = datum();
  const int alpha = static_cast<int>(s);
  KgbElement x = basepoint(k);
  if (base_grading(k, alpha) != Noncompact) {
    bool found = false;
    for (const auto& c : fiber_with_square(k, fibers_[k].basepoint_square))
      if (is_noncompact(c, alpha)) {
        x = c;
        found = true;
        break;
      }
    if (!found) throw std::logic_error("no noncompact source for a Cayley edge");
  }
  KgbElement y = cayley(alpha, x);
  std::vector<int> g(d.roots().size(), -1);
  for (std::size_t r = 0; r < d.roots().size(); ++r) {
    if (classify_root(d, fibers_[y.fiber].tau, static_cast<int>(r)) != RootType::Imaginary) continue;
    int p = string_depth(d, static_cast<int>(r), alpha);
    g[r] = mod2(Int(grading(x, static_cast<int>(r)) + p) + twice_pairing(d.roots()[r].root, y.t));
  }
  return g;
}

void Kgb::compute_base_gradings() {
  const RootDatum& d = datum();
  // Distinguished fiber: simple imaginary roots noncompact, extended additively.
  {
    FiberData& f = fibers_[0];
    f.base_grading.assign(d.roots().size(), -1);
    auto sys = imaginary_system(d, f.tau);
    std::vector<QVec> cols;
    for (int s : sys.simple) cols.push_back(to_rational(d.roots()[s].root));
    QMatrix basis = QMatrix::from_cols(cols, d.rank());
    for (int r : sys.roots) {
      auto c = solve_rational(basis, to_rational(d.roots()[r].root));
      Int total = 0;
      for (const auto& x : *c) total += x.get_num();
      f.base_grading[r] = mod2(total);
    }
  }
  std::vector<bool> done(fibers_.size(), false);
  done[0] = true;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int k = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < d.semisimple_rank(); ++s) {
      RootType t = root_type(k, static_cast<int>(s));
      if (t == RootType::Real) continue;
      int target = t == RootType::Imaginary ? fiber_of_weyl(W_.lmul(s, fibers_[k].w))
                                            : fiber_of_weyl(conjugate_twisted(W_, W_.simple(s), fibers_[k].w));
      if (target < 0 || done[target]) continue;
      fibers_[target].base_grading = t == RootType::Imaginary ? gradings_from_cayley(k, s) : gradings_from_cross(k, s);
      done[target] = true;
      queue.push_back(target);
    }
  }
  for (std::size_t k = 0; k < fibers_.size(); ++k)
    if (!done[k]) throw std::logic_error("twisted involution unreachable from the distinguished fiber");
}

std::vector<std::string> Kgb::grading_consistency_report() const {
  std::vector<std::string> bad;
  for (std::size_t k = 0; k < fibers_.size(); ++k)
    for (std::size_t s = 0; s < datum().semisimple_rank(); ++s) {
      RootType t = root_type(static_cast<int>(k), static_cast<int>(s));
      if (t == RootType::Real) continue;
      std::vector<int> g;
      int target;
      if (t == RootType::Imaginary) {
        g = gradings_from_cayley(static_cast<int>(k), s);
        target = fiber_of_weyl(W_.lmul(s, fibers_[k].w));
      } else {
        g = gradings_from_cross(static_cast<int>(k), s);
        target = fiber_of_weyl(conjugate_twisted(W_, W_.simple(s), fibers_[k].w));
      }
      if (g != fibers_[target].base_grading)
        bad.push_back("fiber " + std::to_string(k) + " via simple root " + std::to_string(s) + " disagrees at fiber " +
                      std::to_string(target));
    }
  return bad;
}

}  // namespace lkt
