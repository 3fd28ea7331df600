#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "modband/folding.hpp"
#include "modband/harness.hpp"
#include "modband/recovery_time.hpp"
#include "modband/sampling_planner.hpp"
#include "modband/signal_model.hpp"

namespace modband {

using json = nlohmann::json;

json to_json(const PeriodicBandpassSignal& s);
PeriodicBandpassSignal signal_from_json(const json& j);

json to_json(const SamplingPlan& p);
json to_json(const DiscreteBandIndices& d);
json to_json(const RecoveryReport& r);
json to_json(const RunResult& r);
json to_json(const SweepReport& r);

json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const json& j);

json params_to_json(const FoldParams& p);
FoldParams params_from_json(const json& j);

// CSV `k,t,y[,gamma]` plus a side-car `<path>.json` with the fold params.
void write_capture(const std::string& path, const FoldedCapture& capture);
void write_capture_csv(std::ostream& os, const FoldedCapture& capture);
FoldedCapture ingest_capture(const std::string& path);
FoldedCapture parse_capture_csv(std::istream& is);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace modband
