/*
 * Copyright 2026 The poibench Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef POIBENCH_CORE_HPP_
#define POIBENCH_CORE_HPP_

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

namespace poibench {

using UserId = std::uint32_t;
using PoiId = std::uint32_t;
using CategoryId = std::uint32_t;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A required dataset file is missing.
class DatasetIncompleteError : public Error {
 public:
  explicit DatasetIncompleteError(const std::string& file)
      : Error("dataset incomplete: missing file " + file), file_(file) {}
  const std::string& file() const { return file_; }

 private:
  std::string file_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A model needs a context (social, categories, ...) the dataset lacks.
class ContextUnavailableError : public Error {
 public:
  using Error::Error;
};

class ColdUserError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Geodesy

inline constexpr double kEarthRadiusKm = 6371.0088;

struct Coordinate {
  double latitude = 0.0;   // degrees
  double longitude = 0.0;  // degrees

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

inline constexpr double deg_to_rad(double deg) {
  return deg * (std::numbers::pi / 180.0);
}

/// Great-circle distance in kilometres.
inline double haversine_km(const Coordinate& a, const Coordinate& b) {
  const double phi1 = deg_to_rad(a.latitude);
  const double phi2 = deg_to_rad(b.latitude);
  const double dphi = phi2 - phi1;
  const double dlambda = deg_to_rad(b.longitude - a.longitude);
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

/// Unit-sphere embedding. The chord between two embedded points gives the
/// same great-circle distance as haversine_km, without trigonometry per pair.
struct UnitVector {
  double x = 0.0, y = 0.0, z = 0.0;

  static UnitVector from(const Coordinate& c) {
    const double phi = deg_to_rad(c.latitude);
    const double lambda = deg_to_rad(c.longitude);
    return {std::cos(phi) * std::cos(lambda), std::cos(phi) * std::sin(lambda),
            std::sin(phi)};
  }

  double chord2(const UnitVector& o) const {
    const double dx = x - o.x, dy = y - o.y, dz = z - o.z;
    return dx * dx + dy * dy + dz * dz;
  }

  double distance_km(const UnitVector& o) const {
    const double half_chord = std::sqrt(chord2(o)) / 2.0;
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, half_chord));
  }
};

// ---------------------------------------------------------------------------
// Random numbers. Sequences depend only on std::mt19937_64, whose output is
// fixed by the standard, so seeded runs reproduce across standard libraries.

using Rng = std::mt19937_64;

/// Uniform double in [0, 1).
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n), n > 0, by rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

/// Standard normal via Box-Muller.
inline double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

// ---------------------------------------------------------------------------
// Parallelism

/// Calls fn(i) for every i in [0, count) on up to `workers` threads. Each
/// index is visited exactly once; callers write results into per-index slots
/// so the merged output does not depend on scheduling. The first exception
/// thrown by fn is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(workers, count));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Text helpers

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf, ptr);
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

/// Splits on any run of spaces/tabs.
inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace poibench

#endif  // POIBENCH_CORE_HPP_
