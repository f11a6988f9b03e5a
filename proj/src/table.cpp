#include "iblt/table.hpp"

#include <cstdlib>
#include <functional>
#include <queue>
#include <stdexcept>

namespace iblt {

Iblt::Iblt(HashScheme scheme)
    : scheme_(std::move(scheme)),
      cells_(static_cast<std::size_t>(scheme_.cells())),
      scratch_(scheme_.k()) {}

void Iblt::update(Key x, Value y, std::int64_t delta) {
  const std::uint64_t mask = low_mask(bits());
  x &= mask;
  y &= mask;
  scheme_.indices(x, scratch_);
  for (std::size_t idx : scratch_) {
    Cell& cell = cells_[idx];
    cell.count += delta;
    cell.key_sum ^= x;
    cell.value_sum ^= y;
  }
}

void Iblt::insert(Key x, Value y) { update(x, y, +1); }

void Iblt::erase(Key x, Value y) { update(x, y, -1); }

GetResult Iblt::get(Key x) const {
  x &= low_mask(bits());
  std::vector<std::size_t> idx(scheme_.k());
  scheme_.indices(x, idx);
  for (std::size_t i : idx) {
    if (cells_[i].count == 0) return GetResult::absent();
  }
  // The key-sum comparison rejects a count-1 cell that holds some other key.
  for (std::size_t i : idx) {
    const Cell& cell = cells_[i];
    if (cell.count == 1 && cell.key_sum == x) return GetResult::found(cell.value_sum);
  }
  return GetResult::inconclusive();
}

template <typename Priority>
ListingResult Iblt::peel(Priority priority) {
  using Item = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;

  std::uint64_t budget = cells_.size();
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    budget += static_cast<std::uint64_t>(std::llabs(cells_[i].count));
    if (cells_[i].count == 1) ready.emplace(priority(i), i);
  }

  ListingResult result;
  // Insert-only tables finish within n steps; the budget only bites when
  // deletions have left impure count-1 cells that keep re-forming.
  while (!ready.empty() && budget > 0) {
    const std::size_t i = ready.top().second;
    ready.pop();
    if (cells_[i].count != 1) continue;
    const Key x = cells_[i].key_sum;
    const Value y = cells_[i].value_sum;
    result.entries.emplace_back(x, y);
    update(x, y, -1);
    --budget;
    for (std::size_t j : scratch_) {
      if (cells_[j].count == 1) ready.emplace(priority(j), j);
    }
  }

  for (const Cell& cell : cells_) {
    if (!cell.empty()) ++result.residual_cells;
  }
  result.status = result.residual_cells == 0 ? ListingStatus::Complete : ListingStatus::Partial;
  return result;
}

ListingResult Iblt::list_entries() const {
  Iblt copy(*this);
  return copy.list_entries_in_place();
}

ListingResult Iblt::list_entries_in_place() {
  return peel([](std::size_t i) { return static_cast<std::uint64_t>(i); });
}

ListingResult Iblt::list_entries_in_place(std::uint64_t order_seed) {
  const std::uint64_t salt = mix64(order_seed);
  return peel([salt](std::size_t i) { return mix64(salt ^ static_cast<std::uint64_t>(i)); });
}

bool Iblt::empty() const {
  for (const Cell& cell : cells_) {
    if (!cell.empty()) return false;
  }
  return true;
}

Iblt& Iblt::operator+=(const Iblt& other) {
  if (other.cells_.size() != cells_.size() || other.scheme_.k() != scheme_.k()) {
    throw std::invalid_argument("Iblt::operator+=: table shapes differ");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    cells_[i].count += other.cells_[i].count;
    cells_[i].key_sum ^= other.cells_[i].key_sum;
    cells_[i].value_sum ^= other.cells_[i].value_sum;
  }
  return *this;
}

}  // namespace iblt
