#ifndef KORTEWEG_ERROR_HPP
#define KORTEWEG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace korteweg {

enum class ErrorCode {
  kInvalidArgument = 1,
  kConfig,
  kNotAdmissible,
  kNoHomoclinic,
  kQuadratureFailure,
  kSplittingLost,
  kIntegrationFailure,
  kNormalizationOverflow,
  kFitUnstable,
  kDegenerateCase,
  kDegenerateIndex,
  kIo,
};

const char* error_code_name(ErrorCode code);

// All failures raised by the numerical core carry one of the codes above; the
// C API maps them one-to-one onto kw_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace korteweg

#endif  // KORTEWEG_ERROR_HPP
