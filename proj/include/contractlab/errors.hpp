#pragma once

#include <stdexcept>
#include <string>

namespace contractlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside a function's mathematical domain.
struct DomainError : Error { using Error::Error; };

// Retail margin r-k does not cover the capacity cost; no capacity is viable.
struct NoViableMargin : Error { using Error::Error; };

// Supplier reservation profit exceeds the first-best chain profit.
struct ReservationTooHigh : Error { using Error::Error; };

// Wholesale price below the supplier's participation threshold c+k.
struct ParticipationViolated : Error { using Error::Error; };

// A root-finding bracket could not be established.
struct BracketFailure : Error { using Error::Error; };

struct NoSignChange : Error { using Error::Error; };
struct MaxIterExceeded : Error { using Error::Error; };
struct UnknownFigure : Error { using Error::Error; };

struct ParseError : Error {
  int line;  // 1-based; 0 when the error is not tied to a specific line
  ParseError(const std::string& msg, int line_ = 0) : Error(msg), line(line_) {}
};

}  // namespace contractlab
