#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <ostream>
#include <utility>
#include <vector>

namespace holocontact {

/// Exponent vector (i_1, ..., i_m) of a monomial or derivative.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dimension) : components_(dimension, 0) {}
  MultiIndex(std::initializer_list<int> components) : components_(components) {}
  explicit MultiIndex(std::vector<int> components) : components_(std::move(components)) {}

  /// e_k scaled by count: count in slot k, zero elsewhere.
  static MultiIndex unit(std::size_t dimension, std::size_t k, int count = 1);

  std::size_t dimension() const noexcept { return components_.size(); }
  int order() const noexcept;
  int operator[](std::size_t k) const { return components_[k]; }
  const std::vector<int>& components() const noexcept { return components_; }

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;
  /// Componentwise <=.
  bool dominated_by(const MultiIndex& other) const;

  /// Product of factorials of the components.
  double factorial() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> components_;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& index);

/// All multi-indices of a fixed dimension with |I| <= order, listed in
/// graded lexicographic order: increasing total degree, and within a degree
/// larger leading components first, e.g. for m = 2:
/// (0,0) (1,0) (0,1) (2,0) (1,1) (0,2) ...
///
/// Instances are shared and immutable; obtain them through get().
class IndexSet {
 public:
  /// One way of writing entry `sum` as entry `left` + entry `right`.
  struct Split {
    std::size_t left;
    std::size_t right;
  };

  static std::shared_ptr<const IndexSet> get(std::size_t dimension, int order);

  std::size_t dimension() const noexcept { return dimension_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& operator[](std::size_t pos) const { return indices_[pos]; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

  /// Position of index, or npos when |index| > order.
  std::size_t position(const MultiIndex& index) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Every (left, right) pair whose componentwise sum is entry `pos`.
  const std::vector<Split>& splits(std::size_t pos) const { return splits_[pos]; }

  /// Number of entries of total degree <= d (a prefix of the ordering).
  std::size_t prefix_size(int d) const;

  IndexSet(std::size_t dimension, int order);

 private:
  std::size_t encode(const MultiIndex& index) const;

  std::size_t dimension_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::vector<std::size_t> lookup_;
  std::vector<std::vector<Split>> splits_;
  std::vector<std::size_t> prefix_;
};

/// Number of multi-indices of the given dimension with |I| <= order.
std::size_t count_indices(std::size_t dimension, int order);

}  // namespace holocontact
