#include "mzv/compositions.hpp"

#include <numeric>
#include <sstream>

#include "mzv/errors.hpp"

namespace mzv {

Composition::Composition(std::vector<int> parts, int last_min) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("composition must have at least one part");
  for (int k : parts_)
    if (k < 1) throw DomainError("composition parts must be >= 1 (got " + std::to_string(k) + ")");
  if (parts_.back() < last_min)
    throw DomainError("composition last part must be >= " + std::to_string(last_min));
}

int Composition::weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string Composition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(parts_[i]);
  }
  return out;
}

Composition Composition::parse(const std::string& text, int last_min) {
  std::vector<int> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw DomainError("bad composition part '" + item + "'");
    }
    if (used != item.size()) throw DomainError("bad composition part '" + item + "'");
    parts.push_back(v);
  }
  return Composition(std::move(parts), last_min);
}

CompositionStream::CompositionStream(int total, int depth, int last_min)
    : total_(total), depth_(depth), last_min_(last_min) {
  if (depth < 1) throw DomainError("composition depth must be >= 1");
  if (last_min != 1 && last_min != 2) throw DomainError("last_min must be 1 or 2");
  if (total < depth + (last_min - 1)) done_ = true;
}

bool CompositionStream::advance() {
  if (!started_) {
    // Lexicographically smallest: (1, ..., 1, total - depth + 1).
    current_.assign(static_cast<std::size_t>(depth_), 1);
    current_.back() = total_ - depth_ + 1;
    started_ = true;
    return true;
  }
  // Rightmost position (excluding the last) that can absorb one more unit
  // while positions to its right still admit a valid completion.
  int rest = current_.back();
  for (int i = depth_ - 2; i >= 0; --i) {
    const int after = depth_ - i - 2;  // free positions strictly between i and last
    if (rest - 1 >= after + last_min_) {
      ++current_[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < depth_ - 1; ++j) current_[static_cast<std::size_t>(j)] = 1;
      current_.back() = rest - 1 - after;
      return true;
    }
    rest += current_[static_cast<std::size_t>(i)];
  }
  return false;
}

std::optional<Composition> CompositionStream::next() {
  if (done_) return std::nullopt;
  if (!advance()) {
    done_ = true;
    return std::nullopt;
  }
  return Composition(current_, last_min_);
}

CompositionStream enumerate_compositions(int total, int depth, int last_min) {
  return CompositionStream(total, depth, last_min);
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::uint64_t count_compositions(int total, int depth, int last_min) {
  if (depth < 1 || total < depth + (last_min - 1)) return 0;
  const int shifted = total - (last_min - 1);
  return binomial(static_cast<std::uint64_t>(shifted - 1), static_cast<std::uint64_t>(depth - 1));
}

std::vector<Composition> all_compositions(int total, int depth, int last_min) {
  std::vector<Composition> out;
  auto stream = enumerate_compositions(total, depth, last_min);
  while (auto c = stream.next()) out.push_back(std::move(*c));
  return out;
}

}  // namespace mzv
