#include "hecke/classnum.hpp"

#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "hecke/ntheory.hpp"

namespace hecke {

bool is_valid_discriminant(std::int64_t d) {
  if (d >= 0) return false;
  std::int64_t r = ((d % 4) + 4) % 4;
  return r == 0 || r == 1;
}

namespace {

std::uint64_t count_reduced_forms(std::int64_t d) {
  std::int64_t ad = -d;
  std::uint64_t count = 0;
  for (std::int64_t a = 1; 3 * a * a <= ad; ++a) {
    // b = -a is equivalent to b = a; skip it
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      std::int64_t num = b * b - d;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

}  // namespace

std::uint64_t class_number(std::int64_t d) {
  if (!is_valid_discriminant(d))
    throw std::invalid_argument("class_number: discriminant must be negative and 0,1 mod 4");
  static std::mutex memo_mutex;
  static std::unordered_map<std::int64_t, std::uint64_t> memo;
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find(d);
    if (it != memo.end()) return it->second;
  }
  std::uint64_t h = count_reduced_forms(d);
  std::lock_guard<std::mutex> lock(memo_mutex);
  memo.emplace(d, h);
  return h;
}

mpq_class weighted_class_number(std::int64_t d) {
  mpq_class w(class_number(d));
  if (d == -3) w /= 3;
  if (d == -4) w /= 2;
  return w;
}

}  // namespace hecke
