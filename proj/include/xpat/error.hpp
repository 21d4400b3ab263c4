#pragma once

#include <stdexcept>
#include <string>

namespace xpat {

enum class ErrorKind {
    Precondition,    // caller violated a documented precondition
    Verification,    // an exact identity or certificate check failed
    SearchExhausted, // bounded search ran out before finding a result
    Parse,           // malformed textual input
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    const char* kind_name() const {
        switch (kind_) {
            case ErrorKind::Precondition: return "precondition";
            case ErrorKind::Verification: return "verification";
            case ErrorKind::SearchExhausted: return "search_exhausted";
            case ErrorKind::Parse: return "parse";
        }
        return "unknown";
    }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

} // namespace xpat
