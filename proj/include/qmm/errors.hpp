#pragma once

#include <stdexcept>
#include <string>

namespace qmm {

// Precondition / configuration violations. The CLI maps these to exit code 1.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Filesystem failures; the message always carries the offending path.
// The CLI maps these to exit code 2.
class IoError : public std::runtime_error {
  public:
    IoError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

}  // namespace qmm
