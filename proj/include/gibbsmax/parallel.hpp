#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The gibbsmax Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace gibbsmax {

namespace detail {

inline std::atomic<unsigned> &thread_setting() noexcept
{
  static std::atomic<unsigned> value{0};
  return value;
}

}  // namespace detail

/// Worker count used by the estimators. Results never depend on it.
/// 0 (the default) means GIBBSMAX_THREADS if set, else hardware concurrency.
inline void set_thread_count(unsigned n) noexcept
{
  detail::thread_setting().store(n);
}

inline unsigned thread_count() noexcept
{
  unsigned const n = detail::thread_setting().load();
  if (n > 0)
  {
    return n;
  }
  if (char const *env = std::getenv("GIBBSMAX_THREADS"))
  {
    int const v = std::atoi(env);
    if (v > 0)
    {
      return static_cast<unsigned>(v);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(begin, end) over a static partition of [0, n).
template <typename Body>
void parallel_for(std::size_t n, Body &&body)
{
  std::size_t const workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1)
  {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr       error;
  std::mutex               error_mutex;
  pool.reserve(workers - 1);
  auto run = [&](std::size_t w) {
    std::size_t const begin = n * w / workers;
    std::size_t const end   = n * (w + 1) / workers;
    try
    {
      body(begin, end);
    }
    catch (...)
    {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error)
      {
        error = std::current_exception();
      }
    }
  };
  for (std::size_t w = 1; w < workers; ++w)
  {
    pool.emplace_back(run, w);
  }
  run(0);
  for (auto &t : pool)
  {
    t.join();
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

/// Pairwise (tree) summation in a fixed order over the indices.
inline double pairwise_sum(std::span<double const> v) noexcept
{
  if (v.size() <= 8)
  {
    double acc = 0.0;
    for (double x : v)
    {
      acc += x;
    }
    return acc;
  }
  std::size_t const half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct SampleSummary
{
  double      mean      = 0.0;
  double      sd        = 0.0;  // sample standard deviation (n - 1)
  double      std_error = 0.0;  // sd / sqrt(n)
  std::size_t n         = 0;
};

/// Mean and standard error; values are centred on the first sample before
/// summing, so a constant column comes back with exactly that constant.
inline SampleSummary summarize(std::span<double const> v)
{
  SampleSummary out;
  out.n = v.size();
  if (v.empty())
  {
    return out;
  }
  double const        pivot = v.front();
  std::vector<double> work(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    work[i] = v[i] - pivot;
  }
  double const shift = pairwise_sum(work) / static_cast<double>(v.size());
  out.mean           = pivot + shift;
  if (v.size() < 2)
  {
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    double const d = v[i] - pivot - shift;
    work[i]        = d * d;
  }
  out.sd        = std::sqrt(pairwise_sum(work) / static_cast<double>(v.size() - 1));
  out.std_error = out.sd / std::sqrt(static_cast<double>(v.size()));
  return out;
}

}  // namespace gibbsmax
