#ifndef SURROMIX_ERRORS_HPP
#define SURROMIX_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace surromix {

// Machine-readable failure categories. `Error::code()` is stable across
// releases; messages are for humans and may change.
enum class Errc {
  invalid_argument,
  dim_mismatch,
  empty_dataset,
  bad_weight,
  bad_labels,
  not_unit_norm,
  singular_system,
  singular_hessian,
  zero_eigenvalue,
  penalty_too_weak,
  invalid_regime,
  task_mismatch,
  too_few_points,
  not_converged,
  io_error,
  parse_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Iterative solver gave up. Carries enough state to diagnose or resume.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, long iterations,
                    double gradient_norm = 0.0, double residual = 0.0,
                    std::vector<double> last_iterate = {})
      : Error(Errc::not_converged, what),
        iterations(iterations),
        gradient_norm(gradient_norm),
        residual(residual),
        last_iterate(std::move(last_iterate)) {}

  long iterations;
  double gradient_norm;
  double residual;
  std::vector<double> last_iterate;
};

}  // namespace surromix

#endif
