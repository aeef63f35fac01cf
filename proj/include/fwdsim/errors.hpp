#pragma once

#include <stdexcept>
#include <string>

namespace fwdsim {

// Every checked failure mode carries one of these codes so tests can
// distinguish them without parsing messages.
enum class ErrorCode {
  MalformedAddress,
  UnknownSuffix,
  MissingHeader,
  UnknownKey,
  NotAddressedToForwarder,
  UnknownAccount,
  InvalidSetup,
  HopLimitExceeded,
  BadInput,
};

class SimError : public std::runtime_error {
 public:
  SimError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw SimError(code, what);
}

}  // namespace fwdsim
