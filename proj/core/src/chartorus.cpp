#include "lkt/chartorus.hpp"

namespace lkt {

namespace {

void require_imaginary(const Kgb& kgb, int k, int root) {
  if (kgb.root_type(k, root) != RootType::Imaginary)
    throw WrongRootType("root " + std::to_string(root) + " is not imaginary at fiber " + std::to_string(k));
}

}  // namespace

Rat alpha_bar(const Kgb& kgb, int k, int root, const IVec& u) {
  require_imaginary(kgb, k, root);
  return frac(dot(to_rational(kgb.datum().roots()[root].root), kgb.u_representative(k, u)));
}

std::vector<IVec> v_subgroup(const Kgb& kgb, int k, int root) {
  std::vector<IVec> out;
  for (const auto& u : kgb.u_tau(k).elements())
    if (alpha_bar(kgb, k, root, u) == 0) out.push_back(u);
  return out;
}

IVec m_bar(const Kgb& kgb, int k, int root) {
  require_imaginary(kgb, k, root);
  const FiniteAbelianGroup& g = kgb.u_tau(k);
  IVec out(g.ngens());
  for (std::size_t i = 0; i < g.ngens(); ++i) {
    IVec e = g.zero();
    e[i] = 1;
    Rat v = alpha_bar(kgb, k, root, e) * Rat(g.factors()[i]);
    if (v.get_den() != 1) throw std::logic_error("alpha_bar is not a character");
    out[i] = v.get_num();
  }
  return out;
}

IVec m_alpha_class(const Kgb& kgb, int k, int root) {
  require_imaginary(kgb, k, root);
  return kgb.u_class(k, scale(Rat(1, 2), to_rational(kgb.datum().roots()[root].coroot)));
}

std::vector<IVec> quotient_kernel(const Kgb& kgb, int k, int root) {
  const FiniteAbelianGroup& g = kgb.u_tau(k);
  auto v = v_subgroup(kgb, k, root);
  std::vector<IVec> out;
  for (const auto& chi : enumerate_box(g.factors())) {
    bool trivial = true;
    for (const auto& u : v) trivial = trivial && g.pairing(u, chi) == 0;
    if (trivial) out.push_back(chi);
  }
  return out;
}

int cayley_fiber(const Kgb& kgb, int k, int root) {
  require_imaginary(kgb, k, root);
  const WeylGroup& W = kgb.weyl();
  return kgb.fiber_of_weyl(W.multiply(W.reflection(root), kgb.fiber(k).w));
}

int cross_fiber(const Kgb& kgb, int k, int w) {
  return kgb.fiber_of_weyl(conjugate_twisted(kgb.weyl(), w, kgb.fiber(k).w));
}

IVec cayley_char_map(const Kgb& kgb, int k, int root, const IVec& u) {
  if (alpha_bar(kgb, k, root, u) != 0) throw std::invalid_argument("class lies outside V_{tau,alpha}");
  return kgb.u_class(cayley_fiber(kgb, k, root), kgb.u_representative(k, u));
}

IVec cross_char_map(const Kgb& kgb, int k, int w, const IVec& u) {
  QVec t = to_rational(kgb.weyl().matrix(w)) * kgb.u_representative(k, u);
  return kgb.u_class(cross_fiber(kgb, k, w), t);
}

}  // namespace lkt
