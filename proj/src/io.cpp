#include "inc4/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace inc4 {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

json vec4_to_json(const Vec4& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(c.str());
    return a;
}

Vec4 vec4_from_json(const json& a, const char* what) {
    if (!a.is_array() || a.size() != 4)
        throw std::invalid_argument(std::string("config: ") + what + " must be a 4-array");
    Vec4 v;
    for (int i = 0; i < 4; ++i) {
        const auto& e = a[i];
        if (e.is_string()) v[i] = Rational::parse(e.get<std::string>());
        else if (e.is_number_integer()) v[i] = Rational(e.get<long long>());
        else throw std::invalid_argument(std::string("config: ") + what +
                                         " entries must be integers or \"p/q\" strings");
    }
    return v;
}

}  // namespace

json config_to_json(const Config& cfg) {
    json j;
    j["name"] = cfg.name;
    j["points"] = json::array();
    for (const auto& p : cfg.points) j["points"].push_back(vec4_to_json(p));
    j["lines"] = json::array();
    for (const auto& l : cfg.lines) {
        json jl;
        jl["base"] = vec4_to_json(l.base);
        json d = json::array();
        for (const auto& c : l.dir) {
            if (c.num().fits_slong_p()) d.push_back(c.num().get_si());
            else d.push_back(c.str());
        }
        jl["dir"] = d;
        j["lines"].push_back(jl);
    }
    if (!cfg.meta.empty()) j["meta"] = cfg.meta;
    return j;
}

Config config_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    std::string name = j.value("name", "unnamed");
    std::vector<Point4> pts;
    for (const auto& p : j.value("points", json::array())) pts.push_back(vec4_from_json(p, "point"));
    std::vector<Line4> lines;
    for (const auto& l : j.value("lines", json::array())) {
        if (!l.is_object()) throw std::invalid_argument("config: line must be an object");
        Vec4 base = vec4_from_json(l.at("base"), "line base");
        Vec4 dir = vec4_from_json(l.at("dir"), "line dir");
        lines.push_back(canonicalize_line(base, dir));
    }
    std::map<std::string, std::string> meta;
    if (j.contains("meta"))
        for (const auto& [k, v] : j["meta"].items())
            meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
    return Config::make(std::move(name), std::move(pts), std::move(lines), std::move(meta));
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    json j;
    in >> j;
    return config_from_json(j);
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << text;
}

json prediction_to_json(const Prediction& p) {
    json j;
    j["family"] = family_name(p.family);
    j["k"] = p.k;
    j["l"] = p.l;
    if (p.family == Family::HyperplanePacking) j["H"] = p.H;
    j["m"] = p.m;
    j["n"] = p.n;
    j["I"] = p.I;
    j["q_claim"] = p.q_claim;
    j["s_claim"] = p.s_claim;
    j["ratio_kind"] = p.ratio_kind;
    j["ratio_target"] = p.ratio_target;
    return j;
}

std::string incidence_csv(const std::vector<IncidenceRow>& rows) {
    std::ostringstream os;
    os << "name,m,n,I,max_per_line,max_per_point\n";
    for (const auto& r : rows)
        os << r.name << "," << r.m << "," << r.n << "," << r.I << "," << r.max_per_line << ","
           << r.max_per_point << "\n";
    return os.str();
}

std::string params_csv(const std::vector<ParamsRow>& rows) {
    std::ostringstream os;
    os << "name,m,n,I,s,q_hyp,q_quad,q_quad_exhaustive,lead_ratio,st_ratio,gk_ratio,bound_ratio\n";
    for (const auto& r : rows) {
        const BoundReport& b = r.report;
        os << r.name << "," << b.m << "," << b.n << "," << b.I << "," << b.params.s.s << ","
           << b.params.q_hyperplane.q << "," << b.params.q_quadric.q << ","
           << (b.params.q_quadric.exhaustive ? 1 : 0) << "," << format_double(b.lead_ratio) << ","
           << format_double(b.st_ratio) << "," << format_double(b.gk_ratio) << ","
           << format_double(b.ratio) << "\n";
    }
    return os.str();
}

json bound_report_to_json(const std::string& name, const BoundReport& rep) {
    json j;
    j["name"] = name;
    j["m"] = rep.m;
    j["n"] = rep.n;
    j["I"] = rep.I;
    j["s"] = rep.params.s.s;
    j["q_hyperplane"] = rep.params.q_hyperplane.q;
    j["q_hyperplane_exhaustive"] = rep.params.q_hyperplane.exhaustive;
    j["q_quadric"] = rep.params.q_quadric.q;
    j["q_quadric_exhaustive"] = rep.params.q_quadric.exhaustive;
    j["rhs"] = {{"lead", rep.rhs.lead},
                {"linear_m", rep.rhs.linear_m},
                {"hyper", rep.rhs.hyper},
                {"planar", rep.rhs.planar},
                {"linear_n", rep.rhs.linear_n},
                {"total", rep.rhs.total}};
    j["ratio"] = rep.ratio;
    j["lead_ratio"] = rep.lead_ratio;
    j["st_ratio"] = rep.st_ratio;
    j["gk_ratio"] = rep.gk_ratio;
    j["violation"] = rep.violation;
    return j;
}

namespace {

json partition_result_to_json(const PartitionResult& part) {
    json j;
    j["degree"] = part.degree;
    j["stages"] = json::array();
    for (const auto& s : part.stages)
        j["stages"].push_back({{"degree", s.degree},
                               {"groups_in", s.groups_in},
                               {"max_imbalance", s.max_imbalance},
                               {"ok", s.ok}});
    j["sign_classes"] = part.sign_classes.size();
    j["max_class_fraction"] = part.max_class_fraction;
    j["zero_points"] = part.zero_points;
    j["balanced"] = part.balanced;
    j["factors"] = json::array();
    for (const auto& f : part.factors) j["factors"].push_back(f.str());
    return j;
}

}  // namespace

json two_stage_to_json(const TwoStageReport& rep) {
    json j;
    j["plan"] = {{"m", rep.plan.m},          {"n", rep.plan.n}, {"small_regime", rep.plan.small_regime},
                 {"D", rep.plan.D},          {"r", rep.plan.r}, {"E", rep.plan.E}};
    j["partition"] = partition_result_to_json(rep.partition);
    j["P0"] = rep.p0;
    j["L0"] = rep.l0;
    j["summands"] = {{"I00", rep.I00}, {"I0p", rep.I0p}, {"Ipp", rep.Ipp}, {"total", rep.I_total}};
    j["budgets"] = {{"identity_ok", rep.identity_ok},
                    {"i0p_budget", rep.i0p_budget},
                    {"i0p_ok", rep.i0p_ok},
                    {"crossing_total", rep.crossings.total},
                    {"crossing_budget", rep.crossings.budget},
                    {"sign_classes", rep.sign_class_count},
                    {"warren_ratio", rep.warren_ratio}};
    j["violations"] = rep.violations;
    if (rep.second_stage) j["second_stage"] = partition_result_to_json(*rep.second_stage);
    return j;
}

json rich_points_to_json(const RichPointsResult& rich, int k, const RichBoundBreakdown* bound) {
    json j;
    j["k"] = k;
    j["count"] = rich.count;
    j["witnesses"] = json::array();
    for (const auto& w : rich.witnesses) {
        json jw;
        jw["point"] = vec4_to_json(w.point);
        jw["lines"] = w.multiplicity;
        j["witnesses"].push_back(jw);
    }
    if (bound) {
        j["bound_rhs"] = {{"joints", bound->joints},
                          {"hyper", bound->hyper},
                          {"planar", bound->planar},
                          {"linear", bound->linear},
                          {"total", bound->total}};
    }
    return j;
}

json certificate_to_json(const PointCertificate& cert) {
    json j;
    j["point"] = vec4_to_json(cert.flatness.point);
    j["singular"] = cert.flatness.singular;
    j["axis_degenerate"] = cert.flatness.axis_degenerate;
    json pis = json::array();
    for (const auto& v : cert.flatness.pi_values) pis.push_back(v.str());
    j["pi_values"] = pis;
    j["flat"] = cert.flatness.is_flat;
    j["flecnode"] = cert.flecnode;
    j["u_resultant_zero"] = cert.u_resultant_zero;
    return j;
}

}  // namespace inc4
