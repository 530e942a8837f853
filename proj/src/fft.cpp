#include "potentia/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace potentia::fft {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Buffer {
  explicit Buffer(std::size_t n) : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!ptr) throw std::bad_alloc();
  }
  ~Buffer() { fftw_free(ptr); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  fftw_complex* ptr;
};

}  // namespace

void transform(std::vector<Complex>& data, std::span<const int> dims, int howmany, bool inverse) {
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  require(data.size() == total * static_cast<std::size_t>(howmany), "fft::transform: size mismatch");
  // fftw_malloc keeps alignment fixed, so the chosen codelets (and hence the
  // rounding) do not depend on where the caller's vector happens to live.
  Buffer buf(data.size());
  std::memcpy(buf.ptr, data.data(), sizeof(fftw_complex) * data.size());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_many_dft(static_cast<int>(dims.size()), dims.data(), howmany, buf.ptr, nullptr, howmany, 1,
                              buf.ptr, nullptr, howmany, 1, inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fft::transform: FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::memcpy(static_cast<void*>(data.data()), buf.ptr, sizeof(fftw_complex) * data.size());
  if (inverse) {
    const double s = 1.0 / static_cast<double>(total);
    for (auto& z : data) z *= s;
  }
}

namespace {

std::vector<int> grid_dims(const Grid& g) { return std::vector<int>(static_cast<std::size_t>(g.dim()), g.n()); }

}  // namespace

void forward(Field& f) { transform(f.data(), grid_dims(f.grid()), f.components(), false); }

void inverse(Field& f) { transform(f.data(), grid_dims(f.grid()), f.components(), true); }

}  // namespace potentia::fft
