#include <algorithm>
#include <cmath>

#include "plsurj/complex.hpp"

namespace plsurj {

Locator::Locator(const Complex& k) : k_(k), n_(k.ambient_dim()) {
  const auto& maximal = k.maximal_simplices();
  if (maximal.empty() || n_ == 0) {
    grid_.assign(1, {});
    for (std::uint32_t slot = 0; slot < maximal.size(); ++slot) grid_[0].push_back(slot);
    lo_.assign(n_, 0.0);
    step_.assign(n_, 1.0);
    box_lo_.assign(maximal.size(), std::vector<double>(n_));
    box_hi_.assign(maximal.size(), std::vector<double>(n_));
    return;
  }
  lo_.assign(n_, 0.0);
  std::vector<double> hi(n_, 0.0);
  for (std::size_t slot = 0; slot < maximal.size(); ++slot) {
    auto [blo, bhi] = double_box(k.points_of(maximal[slot]));
    for (std::size_t i = 0; i < n_; ++i) {
      if (slot == 0 || blo[i] < lo_[i]) lo_[i] = blo[i];
      if (slot == 0 || bhi[i] > hi[i]) hi[i] = bhi[i];
    }
    box_lo_.push_back(std::move(blo));
    box_hi_.push_back(std::move(bhi));
  }
  // About one maximal simplex per grid cell, capped to keep the table small.
  const double per_axis = std::pow(static_cast<double>(maximal.size()), 1.0 / static_cast<double>(n_));
  res_ = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(per_axis)), 1, n_ <= 2 ? 512 : 64);
  step_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) step_[i] = std::max((hi[i] - lo_[i]) / static_cast<double>(res_), 1e-300);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n_; ++i) total *= res_;
  grid_.assign(total, {});
  for (std::uint32_t slot = 0; slot < maximal.size(); ++slot)
    for (auto c : cell_range(box_lo_[slot], box_hi_[slot])) grid_[c].push_back(slot);
}

std::vector<std::size_t> Locator::cell_range(const std::vector<double>& lo, const std::vector<double>& hi) const {
  if (grid_.size() == 1) return {0};
  std::vector<std::size_t> first(n_), last(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    auto idx = [&](double v) {
      const double t = std::floor((v - lo_[i]) / step_[i]);
      if (!(t > 0)) return std::size_t{0};
      return std::min(static_cast<std::size_t>(t), res_ - 1);
    };
    first[i] = idx(lo[i]);
    last[i] = idx(hi[i]);
  }
  std::vector<std::size_t> out;
  std::vector<std::size_t> cur = first;
  for (;;) {
    std::size_t flat = 0;
    for (std::size_t i = n_; i-- > 0;) flat = flat * res_ + cur[i];
    out.push_back(flat);
    std::size_t i = 0;
    while (i < n_ && cur[i] == last[i]) {
      cur[i] = first[i];
      ++i;
    }
    if (i == n_) break;
    ++cur[i];
  }
  return out;
}

std::vector<SimplexIndex> Locator::near_box(const std::vector<double>& lo, const std::vector<double>& hi) const {
  std::vector<std::uint32_t> slots;
  for (auto c : cell_range(lo, hi))
    for (auto s : grid_[c]) slots.push_back(s);
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  std::vector<SimplexIndex> out;
  for (auto s : slots) {
    bool overlap = true;
    for (std::size_t i = 0; i < n_ && overlap; ++i)
      overlap = !(box_hi_[s][i] < lo[i] || hi[i] < box_lo_[s][i]);
    if (overlap) out.push_back(k_.maximal_simplices()[s]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SimplexIndex> Locator::containing_maximal(const Point& p) const {
  if (p.dim() != n_) throw Error(ErrorCode::DimensionMismatch, "query point dimension");
  std::vector<double> box(n_);
  for (std::size_t i = 0; i < n_; ++i) box[i] = p[i].to_double();
  std::vector<SimplexIndex> out;
  for (auto m : near_box(box, box))
    if (k_.frame(m).contains(p)) out.push_back(m);
  return out;
}

std::optional<Carrier> Locator::carrier(const Point& p) const {
  if (p.dim() != n_) throw Error(ErrorCode::DimensionMismatch, "query point dimension");
  std::vector<double> box(n_);
  for (std::size_t i = 0; i < n_; ++i) box[i] = p[i].to_double();
  for (auto m : near_box(box, box)) {
    auto lambda = k_.frame(m).barycentric(p);
    if (!lambda) continue;
    Simplex face;
    std::vector<Rational> weights;
    const auto& verts = k_.simplex(m);
    for (std::size_t i = 0; i < verts.size(); ++i)
      if ((*lambda)[i].sign() > 0) {
        face.push_back(verts[i]);
        weights.push_back((*lambda)[i]);
      }
    return Carrier{k_.simplex_index(face), std::move(weights)};
  }
  return std::nullopt;
}

}  // namespace plsurj
