#pragma once

#include <functional>
#include <string>

namespace nckit {

// Non-fatal conditions (truncation, large tail mass) are reported through a
// process-wide handler. The default handler writes to std::clog.
using WarningHandler = std::function<void(const std::string&)>;

void set_warning_handler(WarningHandler handler);
void reset_warning_handler();
void warn(const std::string& message);

/// Installs a handler for the lifetime of the object and restores the default
/// afterwards. Counts the warnings it receives.
class ScopedWarningCapture {
 public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  int count() const { return count_; }
  const std::string& last() const { return last_; }

 private:
  int count_ = 0;
  std::string last_;
};

}  // namespace nckit
