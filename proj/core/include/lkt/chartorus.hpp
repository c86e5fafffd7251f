#pragma once

#include "lkt/kgb.hpp"

#include <stdexcept>
#include <vector>

namespace lkt {

struct WrongRootType : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Character groups of the torus fibers. U_tau = M/(1+tau)X_* is identified with
// the character group of the dual component group, and D_tau(x) is its coordinate.

// Value of alpha on the class u, as 0 or 1/2. Requires alpha imaginary at fiber k.
Rat alpha_bar(const Kgb& kgb, int k, int root, const IVec& u);
// Kernel of alpha_bar.
std::vector<IVec> v_subgroup(const Kgb& kgb, int k, int root);
// Element of dual(U_tau) pairing with u to alpha_bar(u).
IVec m_bar(const Kgb& kgb, int k, int root);
// Class of m_alpha = e(alpha_check/2) in U_tau.
IVec m_alpha_class(const Kgb& kgb, int k, int root);
// Characters of U_tau vanishing on V_{tau,alpha}, in dual coordinates.
std::vector<IVec> quotient_kernel(const Kgb& kgb, int k, int root);

// Fiber reached from k by the Cayley transform through an imaginary root.
int cayley_fiber(const Kgb& kgb, int k, int root);
// Fiber reached from k by the cross action of w.
int cross_fiber(const Kgb& kgb, int k, int w);

// V_{tau,alpha} -> U_{s_alpha tau}: same torus element, new quotient.
IVec cayley_char_map(const Kgb& kgb, int k, int root, const IVec& u);
// U_tau -> U_{w tau w^-1} by the lattice action of w.
IVec cross_char_map(const Kgb& kgb, int k, int w, const IVec& u);

}  // namespace lkt
