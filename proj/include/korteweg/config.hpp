#ifndef KORTEWEG_CONFIG_HPP
#define KORTEWEG_CONFIG_HPP

#include <string>

#include "korteweg/model.hpp"

namespace korteweg {

// Model files are "key = value" lines; '#' starts a comment. Keys:
//   kappa, v_inf, u_inf
//   pressure.kind = quadratic | van_der_waals
//   pressure.a, pressure.b                      (quadratic)
//   pressure.rt, pressure.acoh, pressure.bcov   (van_der_waals)
// Missing keys take the default configuration's values; unknown keys,
// duplicates and parameters of the other pressure kind are errors.

/// Throws Error(kConfig) with the offending line, or the ModelParams
/// validation error.
ModelParams parse_model_config(const std::string& text);

/// Throws Error(kIo) when the file cannot be read.
ModelParams load_model_config(const std::string& path);

/// Inverse of parse_model_config, with 17 significant digits.
std::string format_model_config(const ModelParams& params);

}  // namespace korteweg

#endif  // KORTEWEG_CONFIG_HPP
