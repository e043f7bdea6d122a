#include "cfx/json_io.hpp"

namespace cfx {

using nlohmann::json;

namespace {

const char* status_name(ExpStatus s) {
    switch (s) {
        case ExpStatus::finite: return "finite";
        case ExpStatus::periodic: return "periodic";
        case ExpStatus::truncated: return "truncated";
    }
    return "?";
}

} // namespace

json expansion_to_json(const Space& space, const Expansion& e) {
    json j;
    j["schema"] = kSchema;
    j["space"] = space.name();
    json digits = json::array();
    for (const auto& d : e.digits) digits.push_back(space.lattice_to_string(d));
    j["digits"] = digits;
    j["leading_digit"] = e.has_leading;
    j["status"] = status_name(e.status);
    j["preperiod"] = e.preperiod;
    j["period"] = e.period;
    j["iterations"] = e.iterations;
    return j;
}

Expansion expansion_from_json(const Space& space, const json& j) {
    Expansion e;
    for (const auto& d : j.at("digits")) e.digits.push_back(space.parse_lattice(d.get<std::string>()));
    e.has_leading = j.value("leading_digit", false);
    std::string st = j.value("status", "finite");
    e.status = st == "periodic"    ? ExpStatus::periodic
               : st == "truncated" ? ExpStatus::truncated
                                   : ExpStatus::finite;
    e.preperiod = j.value("preperiod", static_cast<long>(e.digits.size()) -
                                            (e.status == ExpStatus::periodic ? 1 : 0));
    e.period = j.value("period", 0L);
    return e;
}

json eval_to_json(const Space& space, const EvalResult& r) {
    json j;
    j["schema"] = kSchema;
    j["space"] = space.name();
    if (r.infinity) {
        j["value"] = "infinity";
        return j;
    }
    if (r.exact) j["value"] = space.point_to_string(*r.exact);
    if (r.surd) j["value"] = cs_to_string(*r.surd);
    j["exact"] = r.is_exact();
    j["value_approx"] = r.approx;
    j["cross_check"] = r.cross_check;
    return j;
}

json classification_to_json(const Classification& c) {
    json j;
    j["schema"] = kSchema;
    j["kind"] = iso_kind_name(c.kind);
    if (c.simplicity > 0) j["simplicity"] = c.simplicity;
    json cert;
    for (const auto& [k, v] : c.certificate) cert[k] = v;
    j["certificate"] = cert;
    return j;
}

json trace_to_json(const Space& space, const HoroballTrace& t) {
    json j;
    j["schema"] = kSchema;
    j["space"] = space.name();
    j["finite"] = t.finite;
    j["certificate_ok"] = t.certificate_ok;
    j["iterations"] = t.iterations;
    json steps = json::array();
    for (const auto& s : t.steps) {
        json step;
        step["digit"] = space.lattice_to_string(s.digit);
        step["state_gauge4"] = s.state_gauge4.str();
        step["height4"] = s.height4.str();
        step["height_approx"] = Height4{s.height4}.approx();
        step["multiplier_ok"] = s.multiplier_ok;
        steps.push_back(step);
    }
    j["steps"] = steps;
    j["final_height4"] = t.final_height4.str();
    return j;
}

json geodesic_to_json(const GeodesicMinHeight& g) {
    json j;
    j["schema"] = kSchema;
    j["min_height_approx"] = g.min_height;
    j["argmin_a"] = g.argmin_a;
    j["argmin_b"] = g.argmin_b;
    j["pairs"] = g.pairs;
    j["missed"] = g.missed;
    return j;
}

json properness_to_json(const PropernessReport& p) {
    json j;
    j["rad4"] = rational_to_string(p.rad4);
    j["radius_approx"] = p.radius;
    j["proper"] = p.proper;
    if (!p.warning.empty()) j["warning"] = p.warning;
    return j;
}

json validation_to_json(const ValidationReport& v) {
    json j;
    j["valid"] = v.valid();
    j["proved"] = v.proved();
    if (!v.failure.empty()) j["failure"] = v.failure;
    const char* names[4] = {"a", "b", "c", "d"};
    json entries;
    for (int i = 0; i < 4; ++i) {
        const char* st = nullptr;
        switch (v.entries[i].status) {
            case MembershipStatus::proved: st = "proved"; break;
            case MembershipStatus::semidecided: st = "passed semidecision"; break;
            case MembershipStatus::failed: st = "failed"; break;
            case MembershipStatus::zero: st = "zero"; break;
        }
        entries[names[i]] = st;
    }
    j["entries"] = entries;
    j["pseudo_det_ok"] = v.pseudo_det_ok;
    j["ratios_ok"] = v.ratios_ok;
    return j;
}

std::string json_dump(const json& j) {
    return j.dump(2);
}

} // namespace cfx
