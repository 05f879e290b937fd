#pragma once

// OpenMP plumbing. Work is always cut into a fixed, thread-count independent
// set of chunks and partial results are combined in chunk order, so every
// kernel returns bit-identical results for any number of workers.

#include <omp.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <vector>

namespace qorder {

struct Exec {
  int threads = 1;

  static Exec serial() { return {1}; }
  static Exec all() { return {omp_get_max_threads()}; }
};

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) comp_ += (sum_ - t) + v;
    else comp_ += (v - t) + sum_;
    sum_ = t;
  }
  void add(const CompensatedSum& o) {
    add(o.sum_);
    add(o.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  void add(const ComplexSum& o) {
    re_.add(o.re_);
    im_.add(o.im_);
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Runs body(chunk) for chunk in [0, chunks) on exec.threads workers and
// returns the per-chunk results in chunk order.
template <typename Result, typename Body>
std::vector<Result> map_chunks(const Exec& exec, std::int64_t chunks, Body&& body) {
  std::vector<Result> out(static_cast<std::size_t>(chunks));
  std::exception_ptr failure;
#pragma omp parallel for num_threads(exec.threads) schedule(dynamic) if (exec.threads > 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    try {
      out[static_cast<std::size_t>(c)] = body(c);
    } catch (...) {
#pragma omp critical(qorder_map_chunks_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace qorder
