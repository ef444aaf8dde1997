#pragma once

// JSON and CSV formats: configuration files, predictions, structural and
// bound reports, partition reports, per-point certificates.

#include <json.hpp>

#include <string>
#include <vector>

#include "inc4/algcrit.hpp"
#include "inc4/constructions.hpp"
#include "inc4/geom.hpp"
#include "inc4/partition.hpp"
#include "inc4/structure.hpp"

namespace inc4 {

using nlohmann::json;

json config_to_json(const Config& cfg);
Config config_from_json(const json& j);
Config load_config(const std::string& path);
void save_text(const std::string& path, const std::string& text);

json prediction_to_json(const Prediction& p);

struct IncidenceRow {
    std::string name;
    long long m = 0, n = 0, I = 0, max_per_line = 0, max_per_point = 0;
};

std::string incidence_csv(const std::vector<IncidenceRow>& rows);

struct ParamsRow {
    std::string name;
    BoundReport report;
};

// name, m, n, I, s, q_hyp, q_quad, q_quad_exhaustive, lead_ratio, st_ratio,
// gk_ratio, bound_ratio
std::string params_csv(const std::vector<ParamsRow>& rows);

json bound_report_to_json(const std::string& name, const BoundReport& rep);
json two_stage_to_json(const TwoStageReport& rep);
json rich_points_to_json(const RichPointsResult& rich, int k,
                         const RichBoundBreakdown* bound = nullptr);

struct PointCertificate {
    FlatnessCertificate flatness;
    std::string flecnode;      // "0", "nonzero", or "n/a"
    bool u_resultant_zero = false;
};

json certificate_to_json(const PointCertificate& cert);

std::string format_double(double v);

}  // namespace inc4
