#pragma once

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace afact {

namespace detail {
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

// Unnormalized complex DFT of fixed length. Plans are immutable after construction;
// execution uses new-array execute on private buffers, so one plan serves all threads.
class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n) {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    Buffer a(n), b(n);
    int nn = static_cast<int>(n);
    fwd_ = fftw_plan_dft_1d(nn, a.get(), b.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(nn, a.get(), b.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  ~Fft() {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }

  std::size_t size() const { return n_; }

  // out[k] = sum_j in[j] e^{-2 pi i jk/n}
  std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& in) const {
    return run(fwd_, in);
  }
  // out[j] = sum_k in[k] e^{+2 pi i jk/n}
  std::vector<std::complex<double>> backward(const std::vector<std::complex<double>>& in) const {
    return run(bwd_, in);
  }

 private:
  struct Buffer {
    explicit Buffer(std::size_t n) : p(fftw_alloc_complex(n)) {}
    ~Buffer() { fftw_free(p); }
    fftw_complex* get() const { return p; }
    fftw_complex* p;
  };

  std::vector<std::complex<double>> run(fftw_plan plan, const std::vector<std::complex<double>>& in) const {
    Buffer a(n_), b(n_);
    std::memcpy(a.get(), in.data(), n_ * sizeof(fftw_complex));
    fftw_execute_dft(plan, a.get(), b.get());
    std::vector<std::complex<double>> out(n_);
    std::memcpy(out.data(), b.get(), n_ * sizeof(fftw_complex));
    return out;
  }

  std::size_t n_;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

inline std::shared_ptr<const Fft> fft_of_size(std::size_t n) {
  static std::mutex m;
  static std::map<std::size_t, std::shared_ptr<const Fft>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto& p = cache[n];
  if (!p) p = std::make_shared<const Fft>(n);
  return p;
}

}  // namespace afact
