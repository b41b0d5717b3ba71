#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace homlab {

using ElemIdx = int;

/// A finite partial order with a mandatory minimum element.
///
/// The element sequence is the declaration order; it is the canonical order
/// used for deterministic tie-breaking throughout the library. The full
/// relation is materialized as a boolean matrix, so `leq` is O(1). Posets are
/// immutable after construction and safe to share across threads.
class Poset {
 public:
  /// Builds the reflexive-transitive closure of `covers` over `elements`.
  /// Throws BadParameter (empty/duplicate elements, unknown min),
  /// UnknownElement (cover endpoint not declared), ClosureViolation (closure
  /// breaks antisymmetry, i.e. a cycle) or NoMinimum (`min_element` is not
  /// below every element after closure).
  Poset(std::vector<std::string> elements,
        const std::vector<std::pair<std::string, std::string>>& covers,
        const std::string& min_element);

  /// An antichain c1..cn over the minimum "0". n >= 1.
  static Poset antichain_over_zero(int n);
  /// An antichain c1..cn with minimum "0" and maximum "1". n >= 2.
  static Poset diamond(int n);
  /// The k-element linear order 0 < c1 < ... < c{k-1}. k >= 1.
  static Poset chain(int k);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& elements() const { return names_; }
  const std::string& name(ElemIdx i) const { return names_.at(i); }
  ElemIdx index_of(const std::string& element) const;
  bool has_element(const std::string& element) const;
  ElemIdx min_index() const { return min_; }

  bool leq(ElemIdx a, ElemIdx b) const;
  bool leq(const std::string& a, const std::string& b) const;

  /// True iff every two elements are comparable.
  bool is_linear() const;
  /// True iff every pair of elements has a common upper bound.
  bool is_directed() const;
  /// All x with no y > x, in canonical order.
  std::vector<ElemIdx> maximal_elements() const;
  /// The maximum element, if one exists.
  std::optional<ElemIdx> maximum() const;
  /// Maximal elements of the restriction to elements minus the top.
  /// Throws NoTop when there is no maximum.
  std::vector<ElemIdx> strict_tops_below_top() const;
  /// {x : a <= x and b <= x}, in canonical order.
  std::vector<ElemIdx> upper_bounds(ElemIdx a, ElemIdx b) const;

  /// The covering relation (transitive reduction), in canonical pair order.
  std::vector<std::pair<std::string, std::string>> cover_pairs() const;

  bool operator==(const Poset& other) const;
  bool operator!=(const Poset& other) const { return !(*this == other); }

 private:
  Poset() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, ElemIdx> index_;
  ElemIdx min_ = 0;
  std::vector<std::vector<char>> le_;  // le_[a][b]: a <= b

  void check_elem(ElemIdx e) const;
};

}  // namespace homlab
