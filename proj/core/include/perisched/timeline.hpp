#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "perisched/instance.hpp"

namespace perisched {

// Fixed-length ring of bits; every range argument is taken cyclically and
// must not exceed length().
class CyclicBitmap {
 public:
  CyclicBitmap() = default;
  explicit CyclicBitmap(Time length);

  Time length() const { return length_; }
  void clear();
  bool test(Time pos) const;
  void set(Time start, Time len);
  void reset(Time start, Time len);
  // Offset in [0, len) of the first set bit of [start, start + len), else len.
  Time first_set(Time start, Time len) const;
  // Offset in [0, len) of the first clear bit of [start, start + len), else len.
  Time first_clear(Time start, Time len) const;
  bool any(Time start, Time len) const { return first_set(start, len) < len; }
  Time count() const;

 private:
  Time first_linear(Time from, Time to, bool want_set) const;
  void assign_linear(Time from, Time to, bool value);

  Time length_ = 0;
  std::vector<std::uint64_t> words_;
};

// Occupancy of one resource, folded once per period level: level l keeps the
// union of all placed occurrences modulo period(l). A candidate of level l is
// conflict-free iff its interval is clear in level l's map.
class ResourceTimeline {
 public:
  ResourceTimeline() = default;
  explicit ResourceTimeline(const PeriodSet& periods);

  void clear();
  // Records every occurrence of [start, start + length) with period(level).
  void place(int level, Time start, Time length);
  bool fits(int level, Time start, Time length) const;
  // Least s >= from whose occurrences avoid the occupancy; scans one period.
  std::optional<Time> earliest_fit(int level, Time length, Time from) const;
  std::optional<Time> earliest_fit_period(Time period, Time length, Time from) const;
  const CyclicBitmap& level_map(int level) const { return levels_[static_cast<std::size_t>(level)]; }

 private:
  std::vector<Time> periods_;
  std::vector<CyclicBitmap> levels_;
};

}  // namespace perisched
