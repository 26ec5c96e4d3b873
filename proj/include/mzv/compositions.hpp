#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

namespace mzv {

/// Ordered tuple (k1, ..., kn) of positive integers.
class Composition {
 public:
  /// Throws DomainError unless every part is >= 1, n >= 1 and the last part is
  /// at least `last_min`.
  explicit Composition(std::vector<int> parts, int last_min = 1);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int depth() const noexcept { return static_cast<int>(parts_.size()); }
  int weight() const noexcept;
  int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }
  int back() const noexcept { return parts_.back(); }
  /// "1,2,3"
  std::string to_string() const;
  /// Parses "1,2,3".
  static Composition parse(const std::string& text, int last_min = 1);

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
};

/// Single-pass lexicographic stream of the compositions of `total` into
/// exactly `depth` parts with last part >= last_min. Empty when no such
/// composition exists.
class CompositionStream {
 public:
  CompositionStream(int total, int depth, int last_min);

  /// Next composition, or nullopt once exhausted.
  std::optional<Composition> next();

 private:
  bool advance();

  int total_;
  int depth_;
  int last_min_;
  std::vector<int> current_;
  bool started_ = false;
  bool done_ = false;
};

CompositionStream enumerate_compositions(int total, int depth, int last_min);

/// C(total-1, depth-1) for last_min = 1 and C(total-2, depth-1) for
/// last_min = 2; zero for an empty domain.
std::uint64_t count_compositions(int total, int depth, int last_min);

/// Materialises the stream; only for small totals.
std::vector<Composition> all_compositions(int total, int depth, int last_min);

}  // namespace mzv
