#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "iblt/hashing.hpp"

namespace iblt {

struct Cell {
  std::int64_t count = 0;
  Key key_sum = 0;
  Value value_sum = 0;

  bool empty() const { return count == 0 && key_sum == 0 && value_sum == 0; }
  bool operator==(const Cell&) const = default;
};

using Entry = std::pair<Key, Value>;

enum class ListingStatus { Complete, Partial };

struct ListingResult {
  std::vector<Entry> entries;
  ListingStatus status = ListingStatus::Complete;
  std::size_t residual_cells = 0;

  bool complete() const { return status == ListingStatus::Complete; }
};

struct GetResult {
  enum class Status { Found, Absent, Inconclusive };
  Status status = Status::Absent;
  Value value = 0;

  static GetResult found(Value v) { return {Status::Found, v}; }
  static GetResult absent() { return {Status::Absent, 0}; }
  static GetResult inconclusive() { return {Status::Inconclusive, 0}; }
  bool operator==(const GetResult&) const = default;
};

/// Invertible Bloom lookup table over b-bit keys and values.
///
/// Cells carry a signed count and XOR sums of keys and values. Deletion
/// performs no membership check, so counts may go negative.
class Iblt {
 public:
  explicit Iblt(HashScheme scheme);

  const HashScheme& scheme() const { return scheme_; }
  unsigned bits() const { return scheme_.params().b; }
  std::span<const Cell> cells() const { return cells_; }

  void insert(Key x, Value y);
  void erase(Key x, Value y);
  GetResult get(Key x) const;

  /// Peels a copy of the table; `*this` is left unchanged. Count-1 cells
  /// are taken lowest global index first.
  ListingResult list_entries() const;
  /// Same peeling, destructive: the table is left at the peeling fixpoint.
  ListingResult list_entries_in_place();
  /// Destructive peeling that takes count-1 cells in an order drawn from
  /// `order_seed` instead of lowest index first.
  ListingResult list_entries_in_place(std::uint64_t order_seed);

  bool empty() const;
  /// Cellwise combination: the table of the multiset union of both inputs.
  /// Both tables must share the same hash scheme shape.
  Iblt& operator+=(const Iblt& other);

 private:
  void update(Key x, Value y, std::int64_t delta);
  template <typename Priority>
  ListingResult peel(Priority priority);

  HashScheme scheme_;
  std::vector<Cell> cells_;
  std::vector<std::size_t> scratch_;
};

}  // namespace iblt
