#pragma once

#include <stdexcept>
#include <string>

namespace twintree {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};

// enumerate_root_self_embeddings found more maps than the caller allowed
struct CapExceeded : Error {
  using Error::Error;
};

struct NotALeaf : Error {
  using Error::Error;
};

struct LastVertex : Error {
  using Error::Error;
};

// materialize was asked to expand a scheme whose unfolding is infinite
struct InfiniteUnfolding : Error {
  using Error::Error;
};

struct BadAddress : Error {
  using Error::Error;
};

struct BadParams : Error {
  using Error::Error;
};

struct BadIndex : Error {
  using Error::Error;
};

// a family generator produced certificates that contradict the family's
// contract; this always signals a bug in the decision engines
struct CertificateFailure : Error {
  using Error::Error;
};

struct UnknownSuite : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
        line(line_), col(col_) {}
};

}  // namespace twintree
