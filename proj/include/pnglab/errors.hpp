#ifndef PNGLAB_ERRORS_HPP
#define PNGLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pnglab {

// Parameter outside the documented accuracy envelope (t, N, w ranges).
class envelope_error : public std::runtime_error {
  public:
    explicit envelope_error(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solver failed to converge; carries the last residual norm.
class solver_error : public std::runtime_error {
  public:
    solver_error(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

// Working precision exhausted (lost positive definiteness, fatal cancellation).
class precision_error : public std::runtime_error {
  public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// A particle or hole reached the edge of the finite simulation window.
class window_overflow_error : public std::runtime_error {
  public:
    explicit window_overflow_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pnglab

#endif
