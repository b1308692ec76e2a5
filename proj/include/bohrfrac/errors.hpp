#ifndef BOHRFRAC_ERRORS_HPP
#define BOHRFRAC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bohrfrac {

/// Requested accuracy could not be certified; carries the best bound achieved.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, double best_bound)
      : std::runtime_error(what), best_bound_(best_bound) {}
  double best_bound() const { return best_bound_; }

 private:
  double best_bound_;
};

/// No sign change found on the search interval.
class NoRootError : public std::runtime_error {
 public:
  NoRootError(const std::string& what, double d_lo, double d_hi)
      : std::runtime_error(what), d_lo_(d_lo), d_hi_(d_hi) {}
  double d_at_lo() const { return d_lo_; }
  double d_at_hi() const { return d_hi_; }

 private:
  double d_lo_;
  double d_hi_;
};

/// More than one sign-change cell in the sample; the solver never picks one.
class AmbiguityError : public std::runtime_error {
 public:
  AmbiguityError(const std::string& what,
                 std::vector<std::pair<double, double>> cells)
      : std::runtime_error(what), cells_(std::move(cells)) {}
  const std::vector<std::pair<double, double>>& cells() const { return cells_; }

 private:
  std::vector<std::pair<double, double>> cells_;
};

/// Input file could not be parsed; carries the offending line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace bohrfrac

#endif  // BOHRFRAC_ERRORS_HPP
