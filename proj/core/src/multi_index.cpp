#include "holocontact/multi_index.hpp"

#include "holocontact/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace holocontact {

MultiIndex MultiIndex::unit(std::size_t dimension, std::size_t k, int count) {
  if (k >= dimension) throw DimensionError("unit index direction out of range");
  MultiIndex out(dimension);
  out.components_[k] = count;
  return out;
}

int MultiIndex::order() const noexcept {
  return std::accumulate(components_.begin(), components_.end(), 0);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dimension() != dimension()) throw DimensionError("multi-index dimension mismatch");
  MultiIndex out(*this);
  for (std::size_t k = 0; k < dimension(); ++k) out.components_[k] += other.components_[k];
  return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (other.dimension() != dimension()) throw DimensionError("multi-index dimension mismatch");
  MultiIndex out(*this);
  for (std::size_t k = 0; k < dimension(); ++k) {
    out.components_[k] -= other.components_[k];
    if (out.components_[k] < 0) throw RangeError("multi-index difference is negative");
  }
  return out;
}

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  if (other.dimension() != dimension()) return false;
  for (std::size_t k = 0; k < dimension(); ++k)
    if (components_[k] > other.components_[k]) return false;
  return true;
}

double MultiIndex::factorial() const {
  double out = 1.0;
  for (int c : components_)
    for (int k = 2; k <= c; ++k) out *= k;
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& index) {
  os << '(';
  for (std::size_t k = 0; k < index.dimension(); ++k) {
    if (k) os << ',';
    os << index[k];
  }
  return os << ')';
}

std::size_t count_indices(std::size_t dimension, int order) {
  if (order < 0) return 0;
  // binom(order + dimension, dimension)
  std::size_t out = 1;
  for (std::size_t k = 1; k <= dimension; ++k) out = out * (order + k) / k;
  return out;
}

namespace {

// Compositions of `total` into `slots` parts, largest leading part first.
void compositions(std::size_t slots, int total, std::vector<int>& prefix,
                  std::vector<MultiIndex>& out) {
  if (slots == 1) {
    prefix.push_back(total);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = total; first >= 0; --first) {
    prefix.push_back(first);
    compositions(slots - 1, total - first, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

IndexSet::IndexSet(std::size_t dimension, int order) : dimension_(dimension), order_(order) {
  if (dimension == 0) throw DimensionError("index set needs dimension >= 1");
  if (order < 0) throw OrderError("index set needs order >= 0");
  std::vector<int> prefix;
  for (int d = 0; d <= order; ++d) {
    compositions(dimension, d, prefix, indices_);
    prefix_.push_back(indices_.size());
  }
  std::size_t radix_size = 1;
  for (std::size_t k = 0; k < dimension; ++k) radix_size *= static_cast<std::size_t>(order + 1);
  lookup_.assign(radix_size, npos);
  for (std::size_t pos = 0; pos < indices_.size(); ++pos) lookup_[encode(indices_[pos])] = pos;

  splits_.resize(indices_.size());
  for (std::size_t a = 0; a < indices_.size(); ++a) {
    const int da = indices_[a].order();
    for (std::size_t b = 0; b < prefix_[order - da]; ++b)
      splits_[lookup_[encode(indices_[a] + indices_[b])]].push_back({a, b});
  }
}

std::size_t IndexSet::encode(const MultiIndex& index) const {
  std::size_t code = 0;
  for (std::size_t k = 0; k < dimension_; ++k) code = code * (order_ + 1) + index[k];
  return code;
}

std::size_t IndexSet::position(const MultiIndex& index) const {
  if (index.dimension() != dimension_) throw DimensionError("multi-index dimension mismatch");
  if (index.order() > order_) return npos;
  return lookup_[encode(index)];
}

std::size_t IndexSet::prefix_size(int d) const {
  if (d < 0) return 0;
  if (d > order_) return indices_.size();
  return prefix_[d];
}

std::shared_ptr<const IndexSet> IndexSet::get(std::size_t dimension, int order) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, std::shared_ptr<const IndexSet>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{dimension, order}];
  if (!slot) slot = std::make_shared<const IndexSet>(dimension, order);
  return slot;
}

}  // namespace holocontact
