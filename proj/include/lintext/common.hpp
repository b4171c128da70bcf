#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lintext {

enum class Label : std::uint8_t { Irrelevant = 0, Relevant = 1 };

inline bool is_positive(Label l) { return l == Label::Relevant; }
inline int sign_of(Label l) { return l == Label::Relevant ? 1 : -1; }

std::string_view to_string(Label l);
Label parse_label(std::string_view text);

// Bad input data: malformed files, unknown ids, singular systems and the like.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid option combinations or command-line misuse.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative solver hit its iteration cap.
class ConvergenceError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace lintext
