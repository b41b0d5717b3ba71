#include "homlab/poset.hpp"

#include <algorithm>

#include "homlab/errors.hpp"

namespace homlab {

Poset::Poset(std::vector<std::string> elements,
             const std::vector<std::pair<std::string, std::string>>& covers,
             const std::string& min_element) {
  if (elements.empty()) throw BadParameter("poset needs at least one element");
  names_ = std::move(elements);
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    if (names_[i].empty()) throw BadParameter("empty element name");
    if (!index_.emplace(names_[i], i).second)
      throw BadParameter("duplicate element: " + names_[i]);
  }
  auto mi = index_.find(min_element);
  if (mi == index_.end())
    throw BadParameter("minimum '" + min_element + "' is not an element");
  min_ = mi->second;

  const int n = size();
  le_.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) le_[i][i] = 1;
  for (const auto& [lo, hi] : covers) {
    auto a = index_.find(lo);
    auto b = index_.find(hi);
    if (a == index_.end()) throw UnknownElement("unknown element: " + lo);
    if (b == index_.end()) throw UnknownElement("unknown element: " + hi);
    le_[a->second][b->second] = 1;
  }
  // Warshall closure.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (le_[i][k])
        for (int j = 0; j < n; ++j)
          if (le_[k][j]) le_[i][j] = 1;

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (le_[i][j] && le_[j][i])
        throw ClosureViolation("cycle through '" + names_[i] + "' and '" +
                               names_[j] + "'");
  for (int j = 0; j < n; ++j)
    if (!le_[min_][j])
      throw NoMinimum("'" + names_[min_] + "' is not below '" + names_[j] +
                      "'");
}

Poset Poset::antichain_over_zero(int n) {
  if (n < 1) throw BadParameter("antichain size must be >= 1");
  std::vector<std::string> elems{"0"};
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 1; i <= n; ++i) {
    elems.push_back("c" + std::to_string(i));
    covers.emplace_back("0", elems.back());
  }
  return Poset(std::move(elems), covers, "0");
}

Poset Poset::diamond(int n) {
  if (n < 2) throw BadParameter("diamond antichain size must be >= 2");
  std::vector<std::string> elems{"0"};
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 1; i <= n; ++i) {
    elems.push_back("c" + std::to_string(i));
    covers.emplace_back("0", elems.back());
  }
  elems.push_back("1");
  for (int i = 1; i <= n; ++i) covers.emplace_back("c" + std::to_string(i), "1");
  return Poset(std::move(elems), covers, "0");
}

Poset Poset::chain(int k) {
  if (k < 1) throw BadParameter("chain length must be >= 1");
  std::vector<std::string> elems{"0"};
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 1; i < k; ++i) {
    elems.push_back("c" + std::to_string(i));
    covers.emplace_back(elems[i - 1], elems[i]);
  }
  return Poset(std::move(elems), covers, "0");
}

ElemIdx Poset::index_of(const std::string& element) const {
  auto it = index_.find(element);
  if (it == index_.end()) throw UnknownElement("unknown element: " + element);
  return it->second;
}

bool Poset::has_element(const std::string& element) const {
  return index_.count(element) != 0;
}

void Poset::check_elem(ElemIdx e) const {
  if (e < 0 || e >= size())
    throw UnknownElement("element index out of range: " + std::to_string(e));
}

bool Poset::leq(ElemIdx a, ElemIdx b) const {
  check_elem(a);
  check_elem(b);
  return le_[a][b] != 0;
}

bool Poset::leq(const std::string& a, const std::string& b) const {
  return leq(index_of(a), index_of(b));
}

bool Poset::is_linear() const {
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!le_[i][j] && !le_[j][i]) return false;
  return true;
}

bool Poset::is_directed() const {
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool bounded = false;
      for (int r = 0; r < n && !bounded; ++r) bounded = le_[i][r] && le_[j][r];
      if (!bounded) return false;
    }
  return true;
}

std::vector<ElemIdx> Poset::maximal_elements() const {
  std::vector<ElemIdx> out;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    bool covered = false;
    for (int j = 0; j < n && !covered; ++j) covered = j != i && le_[i][j];
    if (!covered) out.push_back(i);
  }
  return out;
}

std::optional<ElemIdx> Poset::maximum() const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    bool top = true;
    for (int j = 0; j < n && top; ++j) top = le_[j][i] != 0;
    if (top) return i;
  }
  return std::nullopt;
}

std::vector<ElemIdx> Poset::strict_tops_below_top() const {
  auto top = maximum();
  if (!top) throw NoTop("poset has no maximum element");
  std::vector<ElemIdx> out;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (i == *top) continue;
    bool covered = false;
    for (int j = 0; j < n && !covered; ++j)
      covered = j != i && j != *top && le_[i][j];
    if (!covered) out.push_back(i);
  }
  return out;
}

std::vector<ElemIdx> Poset::upper_bounds(ElemIdx a, ElemIdx b) const {
  check_elem(a);
  check_elem(b);
  std::vector<ElemIdx> out;
  for (int r = 0; r < size(); ++r)
    if (le_[a][r] && le_[b][r]) out.push_back(r);
  return out;
}

std::vector<std::pair<std::string, std::string>> Poset::cover_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  const int n = size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !le_[a][b]) continue;
      bool direct = true;
      for (int c = 0; c < n && direct; ++c)
        direct = c == a || c == b || !(le_[a][c] && le_[c][b]);
      if (direct) out.emplace_back(names_[a], names_[b]);
    }
  return out;
}

bool Poset::operator==(const Poset& other) const {
  return names_ == other.names_ && min_ == other.min_ && le_ == other.le_;
}

}  // namespace homlab
