#pragma once

#include "lkt/rootdata.hpp"

#include <map>
#include <vector>

namespace lkt {

// Finite Weyl group of a root datum, elements indexed in breadth-first (length) order.
class WeylGroup {
 public:
  explicit WeylGroup(const InnerClass& ic, std::size_t max_order = 200000);

  std::size_t size() const { return mats_.size(); }
  std::size_t nsimple() const { return lmul_.empty() ? 0 : lmul_[0].size(); }
  int identity() const { return 0; }
  int simple(std::size_t i) const { return lmul_[0][i]; }
  // Action on X_*(H).
  const IntMatrix& matrix(int w) const { return mats_[w]; }
  // Action on X^*(H): transpose of the inverse.
  IntMatrix character_matrix(int w) const { return mats_[inv_[w]].transpose(); }
  int length(int w) const { return len_[w]; }
  const std::vector<int>& word(int w) const { return words_[w]; }
  int inverse(int w) const { return inv_[w]; }
  int lmul(std::size_t s, int w) const { return lmul_[w][s]; }
  int multiply(int a, int b) const;
  int from_word(const std::vector<int>& word) const;
  int find(const IntMatrix& m) const;  // -1 if absent
  // gamma w gamma
  int twist(int w) const { return twist_[w]; }
  int reflection(int root) const { return refl_[root]; }
  int act_on_root(int w, int root) const;
  int longest() const;

  const InnerClass& inner_class() const { return ic_; }
  const RootDatum& datum() const { return ic_.datum; }

 private:
  InnerClass ic_;
  std::vector<IntMatrix> mats_;
  std::map<IntMatrix, int> index_;
  std::vector<std::vector<int>> lmul_;
  std::vector<int> len_, inv_, twist_, refl_;
  std::vector<std::vector<int>> words_;
};

struct TwistedInvolution {
  int w;
  IntMatrix tau;  // w gamma on X_*(H)
};
std::vector<TwistedInvolution> twisted_involutions(const WeylGroup& W);
// v w gamma(v)^{-1}
int conjugate_twisted(const WeylGroup& W, int v, int w);
QVec weyl_act(const WeylGroup& W, int w, const RationalVector& v);

// e(t) sigma_w delta^flag, torus exponent reduced mod X_*(H).
struct TitsElement {
  QVec t;
  int w = 0;
  bool flag = false;
  bool operator==(const TitsElement& o) const = default;
};

class TitsGroup {
 public:
  explicit TitsGroup(const WeylGroup& W) : W_(&W) {}

  TitsElement torus(const QVec& t) const;
  TitsElement sigma(int w) const;
  TitsElement delta() const;
  // sigma attached to an arbitrary root by conjugating a simple one.
  TitsElement sigma_root(int root) const;
  TitsElement multiply(const TitsElement& a, const TitsElement& b) const;
  TitsElement inverse(const TitsElement& a) const;
  TitsElement conjugate(const TitsElement& g, const TitsElement& x) const;
  const WeylGroup& weyl() const { return *W_; }

 private:
  // sigma_a sigma_b = e(u) sigma_{ab}
  std::pair<QVec, int> sigma_product(int a, int b) const;
  const WeylGroup* W_;
};

}  // namespace lkt
