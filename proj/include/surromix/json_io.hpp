#ifndef SURROMIX_JSON_IO_HPP
#define SURROMIX_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "surromix/types.hpp"

// JSON serialization of the domain types. Field names are snake_case and
// stable; loading always runs the type's validation, so malformed documents
// fail with a message naming the offending field.

namespace surromix {

using json = nlohmann::json;

json to_json(const LabeledDataset& v);
json to_json(const MixtureConfig& v);
json to_json(const PowerLawFit& v);
json to_json(const ScalingLawModel& v);
json to_json(const RiskCurve& v);
json to_json(const SequenceModelSpec& v);
json to_json(const NonparamSpec& v);
json to_json(const HiDimSpec& v);
json to_json(const HiDimSolution& v);
json to_json(const LowDimCurvature& v);
json to_json(const ExperimentPlan& v);

LabeledDataset dataset_from_json(const json& j);
MixtureConfig mixture_config_from_json(const json& j);
PowerLawFit power_law_fit_from_json(const json& j);
ScalingLawModel scaling_model_from_json(const json& j);
RiskCurve risk_curve_from_json(const json& j);
SequenceModelSpec sequence_spec_from_json(const json& j);
NonparamSpec nonparam_spec_from_json(const json& j);
HiDimSpec hidim_spec_from_json(const json& j);
HiDimSolution hidim_solution_from_json(const json& j);
LowDimCurvature lowdim_curvature_from_json(const json& j);
ExperimentPlan experiment_plan_from_json(const json& j);

// File helpers. Parse errors are reported as Errc::parse_error, missing or
// unreadable files as Errc::io_error.
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

Eigen::VectorXd vector_from_json(const json& j, const char* field);
Eigen::MatrixXd matrix_from_json(const json& j, const char* field);
json to_json(const Eigen::VectorXd& v);
json to_json(const Eigen::MatrixXd& m);

}  // namespace surromix

#endif
