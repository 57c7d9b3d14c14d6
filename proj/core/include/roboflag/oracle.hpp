#pragma once

#include <cstdint>
#include <unordered_map>

#include "roboflag/instance.hpp"

namespace roboflag {

// Memoizing wrapper around int_time for a fixed instance. Results are
// cached by the exact bit pattern of (attacker, defender state, start time),
// so cached and uncached answers are identical. Not thread-safe: intended
// for use inside a single sequential solve.
class InterceptOracle {
 public:
  explicit InterceptOracle(const InstanceSpec& inst) : inst_(inst) {
    cache_.reserve(1024);
  }

  // attacker is 0-based here; callers working in the 1-based encoding
  // subtract one.
  InterceptResult query(const DefenderState& d, int attacker,
                        double t0) const {
    Key key = make_key(d, attacker, t0);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      ++hits_;
      return it->second;
    }
    InterceptResult r =
        int_time(d, inst_.attackers[attacker], t0, inst_.field, inst_.grid);
    cache_.emplace(key, r);
    return r;
  }

  const InstanceSpec& instance() const { return inst_; }
  std::uint64_t cache_hits() const { return hits_; }
  std::uint64_t cache_size() const { return cache_.size(); }

 private:
  struct Key {
    std::uint64_t bits[6];
    bool operator==(const Key& o) const {
      for (int i = 0; i < 6; ++i) {
        if (bits[i] != o.bits[i]) return false;
      }
      return true;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      for (const std::uint64_t b : k.bits) {
        h ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
      }
      return static_cast<std::size_t>(h);
    }
  };

  static std::uint64_t double_bits(double v) {
    std::uint64_t out;
    static_assert(sizeof(out) == sizeof(v));
    __builtin_memcpy(&out, &v, sizeof(out));
    return out;
  }

  static Key make_key(const DefenderState& d, int attacker, double t0) {
    return Key{{static_cast<std::uint64_t>(attacker), double_bits(d.x),
                double_bits(d.y), double_bits(d.vx), double_bits(d.vy),
                double_bits(t0)}};
  }

  const InstanceSpec& inst_;
  mutable std::unordered_map<Key, InterceptResult, KeyHash> cache_;
  mutable std::uint64_t hits_ = 0;
};

}  // namespace roboflag
