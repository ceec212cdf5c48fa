//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_UTIL_HPP_
#define HAWKES_UTIL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hawkes {

/// Malformed or invalid input data (corpus, model, or config files).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A computation produced a non-finite or otherwise unusable value.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Library warnings go through a replaceable sink; the default writes to
// stderr.
using LogSink = std::function<void(std::string_view)>;
void set_warning_sink(LogSink sink);
void warn(std::string_view message);

/// Derives an independent 64-bit seed for the named sub-stream.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t index = 0);

/// Runs fn(i) for i in [0, n) on up to `workers` threads. The first
/// exception thrown by any invocation is rethrown on the calling thread.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)> &fn);

/// Number of hardware threads, at least 1.
int default_workers();

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path &path,
                       std::string_view contents);

std::string read_file(const std::filesystem::path &path);

} // namespace hawkes

#endif // HAWKES_UTIL_HPP_
