#include "perisched/timeline.hpp"

#include <algorithm>
#include <bit>

namespace perisched {

namespace {

constexpr Time kWord = 64;

std::uint64_t mask_from(Time bit) { return ~std::uint64_t{0} << bit; }
std::uint64_t mask_below(Time bit) {
  return bit >= kWord ? ~std::uint64_t{0} : (std::uint64_t{1} << bit) - 1;
}

}  // namespace

CyclicBitmap::CyclicBitmap(Time length)
    : length_(length), words_(static_cast<std::size_t>((length + kWord - 1) / kWord), 0) {}

void CyclicBitmap::clear() { std::fill(words_.begin(), words_.end(), 0); }

bool CyclicBitmap::test(Time pos) const {
  pos = mod_floor(pos, length_);
  return (words_[static_cast<std::size_t>(pos / kWord)] >> (pos % kWord)) & 1U;
}

// First bit in [from, to) equal to want_set, else `to`.
Time CyclicBitmap::first_linear(Time from, Time to, bool want_set) const {
  if (from >= to) return to;
  Time w = from / kWord;
  Time last = (to - 1) / kWord;
  std::uint64_t word = words_[static_cast<std::size_t>(w)];
  if (!want_set) word = ~word;
  word &= mask_from(from % kWord);
  while (true) {
    if (w == last) word &= mask_below(to - last * kWord);
    if (word != 0) return w * kWord + std::countr_zero(word);
    if (++w > last) return to;
    word = words_[static_cast<std::size_t>(w)];
    if (!want_set) word = ~word;
  }
}

void CyclicBitmap::assign_linear(Time from, Time to, bool value) {
  while (from < to) {
    Time w = from / kWord;
    Time hi = std::min(to, (w + 1) * kWord);
    std::uint64_t mask = mask_from(from % kWord) & mask_below(hi - w * kWord);
    auto& word = words_[static_cast<std::size_t>(w)];
    word = value ? (word | mask) : (word & ~mask);
    from = hi;
  }
}

void CyclicBitmap::set(Time start, Time len) {
  start = mod_floor(start, length_);
  Time end = start + len;
  assign_linear(start, std::min(end, length_), true);
  if (end > length_) assign_linear(0, end - length_, true);
}

void CyclicBitmap::reset(Time start, Time len) {
  start = mod_floor(start, length_);
  Time end = start + len;
  assign_linear(start, std::min(end, length_), false);
  if (end > length_) assign_linear(0, end - length_, false);
}

Time CyclicBitmap::first_set(Time start, Time len) const {
  start = mod_floor(start, length_);
  Time end = start + len;
  Time hit = first_linear(start, std::min(end, length_), true);
  if (hit < std::min(end, length_)) return hit - start;
  if (end <= length_) return len;
  hit = first_linear(0, end - length_, true);
  return hit < end - length_ ? hit + length_ - start : len;
}

Time CyclicBitmap::first_clear(Time start, Time len) const {
  start = mod_floor(start, length_);
  Time end = start + len;
  Time hit = first_linear(start, std::min(end, length_), false);
  if (hit < std::min(end, length_)) return hit - start;
  if (end <= length_) return len;
  hit = first_linear(0, end - length_, false);
  return hit < end - length_ ? hit + length_ - start : len;
}

Time CyclicBitmap::count() const {
  Time n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

ResourceTimeline::ResourceTimeline(const PeriodSet& periods)
    : periods_(periods.periods().begin(), periods.periods().end()) {
  for (Time p : periods_) levels_.emplace_back(p);
}

void ResourceTimeline::clear() {
  for (auto& level : levels_) level.clear();
}

void ResourceTimeline::place(int level, Time start, Time length) {
  Time period = periods_[static_cast<std::size_t>(level)];
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    Time pj = periods_[j];
    if (pj >= period) {
      for (Time copy = 0; copy < pj; copy += period) levels_[j].set(start + copy, length);
    } else {
      levels_[j].set(start, std::min(length, pj));
    }
  }
}

bool ResourceTimeline::fits(int level, Time start, Time length) const {
  return !levels_[static_cast<std::size_t>(level)].any(start, length);
}

std::optional<Time> ResourceTimeline::earliest_fit(int level, Time length, Time from) const {
  const CyclicBitmap& map = levels_[static_cast<std::size_t>(level)];
  Time period = map.length();
  Time advanced = 0;
  while (advanced < period) {
    Time candidate = from + advanced;
    Time blocked = map.first_set(candidate, length);
    if (blocked == length) return candidate;
    // Jump past the run of busy bits that starts at the first conflict.
    Time run = map.first_clear(candidate + blocked, period);
    if (run == period) return std::nullopt;
    advanced += blocked + run;
  }
  return std::nullopt;
}

std::optional<Time> ResourceTimeline::earliest_fit_period(Time period, Time length,
                                                          Time from) const {
  for (std::size_t j = 0; j < periods_.size(); ++j) {
    if (periods_[j] == period) return earliest_fit(static_cast<int>(j), length, from);
  }
  throw InputError("period not in the timeline's period set");
}

}  // namespace perisched
