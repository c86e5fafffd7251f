#include "lkt/tits.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace lkt {

namespace {

IntMatrix simple_reflection(const RootDatum& d, std::size_t i) {
  const std::size_t n = d.rank();
  IntMatrix s = IntMatrix::identity(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) s(x, y) -= d.simple_coroots()(i, x) * d.simple_roots()(i, y);
  return s;
}

IntMatrix root_reflection(const Root& r) {
  const std::size_t n = r.root.size();
  IntMatrix s = IntMatrix::identity(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) s(x, y) -= r.coroot[x] * r.root[y];
  return s;
}

}  // namespace

WeylGroup::WeylGroup(const InnerClass& ic, std::size_t max_order) : ic_(ic) {
  const RootDatum& d = ic_.datum;
  const std::size_t r = d.semisimple_rank();
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < r; ++i) gens.push_back(simple_reflection(d, i));
  mats_.push_back(IntMatrix::identity(d.rank()));
  index_[mats_[0]] = 0;
  len_.push_back(0);
  lmul_.emplace_back(r, -1);
  for (std::size_t k = 0; k < mats_.size(); ++k) {
    for (std::size_t s = 0; s < r; ++s) {
      IntMatrix m = gens[s] * mats_[k];
      auto it = index_.find(m);
      int j;
      if (it == index_.end()) {
        if (mats_.size() >= max_order) throw std::length_error("Weyl group exceeds the size limit");
        j = static_cast<int>(mats_.size());
        mats_.push_back(m);
        index_[m] = j;
        len_.push_back(len_[k] + 1);
        lmul_.emplace_back(r, -1);
      } else {
        j = it->second;
      }
      lmul_[k][s] = j;
    }
  }
  words_.resize(mats_.size());
  for (std::size_t w = 1; w < mats_.size(); ++w) {
    for (std::size_t s = 0; s < r; ++s) {
      int v = lmul_[w][s];
      if (len_[v] < len_[w]) {
        words_[w].push_back(static_cast<int>(s));
        words_[w].insert(words_[w].end(), words_[v].begin(), words_[v].end());
        break;
      }
    }
  }
  inv_.resize(mats_.size());
  twist_.resize(mats_.size());
  for (std::size_t w = 0; w < mats_.size(); ++w) {
    std::vector<int> rev = words_[w];
    std::reverse(rev.begin(), rev.end());
    inv_[w] = from_word(rev);
    twist_[w] = find(ic_.gamma * mats_[w] * ic_.gamma);
    if (twist_[w] < 0) throw InvalidInnerClass("gamma does not normalize the Weyl group");
  }
  for (const auto& root : d.roots()) refl_.push_back(find(root_reflection(root)));
}

int WeylGroup::from_word(const std::vector<int>& word) const {
  int w = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) w = lmul_[w][*it];
  return w;
}

int WeylGroup::multiply(int a, int b) const {
  const auto& wa = words_[a];
  int w = b;
  for (auto it = wa.rbegin(); it != wa.rend(); ++it) w = lmul_[w][*it];
  return w;
}

int WeylGroup::find(const IntMatrix& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

int WeylGroup::act_on_root(int w, int root) const {
  return datum().find_root(character_matrix(w) * datum().roots()[root].root);
}

int WeylGroup::longest() const {
  return static_cast<int>(std::max_element(len_.begin(), len_.end()) - len_.begin());
}

std::vector<TwistedInvolution> twisted_involutions(const WeylGroup& W) {
  std::vector<TwistedInvolution> out;
  for (std::size_t w = 0; w < W.size(); ++w) {
    int iw = static_cast<int>(w);
    if (W.multiply(iw, W.twist(iw)) == W.identity())
      out.push_back({iw, W.matrix(iw) * W.inner_class().gamma});
  }
  return out;
}

int conjugate_twisted(const WeylGroup& W, int v, int w) {
  return W.multiply(W.multiply(v, w), W.inverse(W.twist(v)));
}

QVec weyl_act(const WeylGroup& W, int w, const RationalVector& v) {
  if (v.role == Role::Cocharacter) return to_rational(W.matrix(w)) * v.v;
  return to_rational(W.character_matrix(w)) * v.v;
}

TitsElement TitsGroup::torus(const QVec& t) const { return {frac(t), 0, false}; }

TitsElement TitsGroup::sigma(int w) const { return {zeros(W_->datum().rank()), w, false}; }

TitsElement TitsGroup::delta() const { return {zeros(W_->datum().rank()), 0, true}; }

std::pair<QVec, int> TitsGroup::sigma_product(int a, int b) const {
  const RootDatum& d = W_->datum();
  QVec u = zeros(d.rank());
  int v = b;
  const auto& word = W_->word(a);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int s = *it;
    u = to_rational(W_->matrix(W_->simple(s))) * u;
    int sv = W_->lmul(s, v);
    if (W_->length(sv) < W_->length(v)) u = add(u, scale(Rat(1, 2), to_rational(d.simple_coroots().row(s))));
    v = sv;
  }
  return {frac(u), v};
}

TitsElement TitsGroup::multiply(const TitsElement& a, const TitsElement& b) const {
  const IntMatrix& gamma = W_->inner_class().gamma;
  QVec bt = a.flag ? to_rational(gamma) * b.t : b.t;
  int bw = a.flag ? W_->twist(b.w) : b.w;
  QVec t = add(a.t, to_rational(W_->matrix(a.w)) * bt);
  auto [u, w] = sigma_product(a.w, bw);
  return {frac(add(t, u)), w, a.flag != b.flag};
}

TitsElement TitsGroup::inverse(const TitsElement& a) const {
  const RootDatum& d = W_->datum();
  TitsElement r = a.flag ? delta() : sigma(0);
  const auto& word = W_->word(a.w);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    // sigma_s^{-1} = m_s sigma_s
    TitsElement si{frac(scale(Rat(1, 2), to_rational(d.simple_coroots().row(*it)))), W_->simple(*it), false};
    r = multiply(r, si);
  }
  return multiply(r, torus(neg(a.t)));
}

TitsElement TitsGroup::conjugate(const TitsElement& g, const TitsElement& x) const {
  return multiply(multiply(g, x), inverse(g));
}

TitsElement TitsGroup::sigma_root(int root) const {
  const RootDatum& d = W_->datum();
  int p = d.positive_of(root);
  // Descend to a simple root through simple reflections: p = v(alpha_s).
  std::vector<int> chain;
  int cur = p;
  while (cur >= static_cast<int>(d.semisimple_rank())) {
    int step = -1;
    for (std::size_t i = 0; i < d.semisimple_rank(); ++i)
      if (dot(d.roots()[cur].root, d.simple_coroots().row(i)) > 0) {
        step = static_cast<int>(i);
        break;
      }
    chain.push_back(step);
    cur = W_->act_on_root(W_->simple(step), cur);
  }
  int v = W_->from_word(chain);
  TitsElement sv = sigma(v);
  return multiply(multiply(sv, sigma(W_->simple(cur))), inverse(sv));
}

}  // namespace lkt
