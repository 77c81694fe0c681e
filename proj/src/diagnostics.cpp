#include "nckit/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace nckit {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler() {
  static WarningHandler h;
  return h;
}

}  // namespace

void set_warning_handler(WarningHandler h) {
  std::lock_guard lock(handler_mutex());
  handler() = std::move(h);
}

void reset_warning_handler() { set_warning_handler(nullptr); }

void warn(const std::string& message) {
  std::lock_guard lock(handler_mutex());
  if (handler()) {
    handler()(message);
  } else {
    std::clog << "nckit warning: " << message << '\n';
  }
}

ScopedWarningCapture::ScopedWarningCapture() {
  set_warning_handler([this](const std::string& m) {
    ++count_;
    last_ = m;
  });
}

ScopedWarningCapture::~ScopedWarningCapture() { reset_warning_handler(); }

}  // namespace nckit
