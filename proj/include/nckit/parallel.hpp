#pragma once

namespace nckit {

enum class Backend { serial, openmp };

/// Backend used by the kernel dispatchers. Defaults to OpenMP.
Backend backend();
void set_backend(Backend b);

/// Caps OpenMP worker threads (0 restores the runtime default). A value of 1
/// also switches the dispatchers to the serial reference kernels.
void set_thread_count(int n);
int thread_count();

/// Restores the previous backend when it goes out of scope.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend b) : saved_(backend()) { set_backend(b); }
  ~ScopedBackend() { set_backend(saved_); }
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend saved_;
};

}  // namespace nckit
