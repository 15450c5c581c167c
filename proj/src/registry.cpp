#include "spdc/registry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spdc {
namespace {

using nlohmann::json;

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

SellmeierForm parse_form(const json& j, const std::string& record, const std::string& axis) {
    auto fail = [&](const std::string& field, const std::string& why) -> void {
        throw ParseError("record '" + record + "', axis " + axis + ", field '" + field +
                         "': " + why);
    };
    SellmeierForm form;
    if (!j.is_object()) fail("axes." + axis, "expected an object");
    if (!j.contains("A") || !j["A"].is_number()) fail("A", "missing or non-numeric");
    form.constant_term = j["A"].get<double>();
    if (!j.contains("F") || !j["F"].is_number()) fail("F", "missing or non-numeric");
    form.infrared_term = j["F"].get<double>();
    if (!j.contains("terms") || !j["terms"].is_array()) fail("terms", "missing or not an array");
    for (const auto& t : j["terms"]) {
        SellmeierTerm term;
        if (!t.is_object() || !t.contains("style") || !t.contains("num") || !t.contains("pole"))
            fail("terms", "each term needs style, num, pole");
        const std::string style = t["style"].get<std::string>();
        if (style == "ratio") {
            term.style = SellmeierTerm::Style::Ratio;
        } else if (style == "pole") {
            term.style = SellmeierTerm::Style::Pole;
        } else {
            fail("terms.style", "unknown style '" + style + "' (expected 'ratio' or 'pole')");
        }
        term.num = t["num"].get<double>();
        term.pole = t["pole"].get<double>();
        form.terms.push_back(term);
    }
    return form;
}

CrystalRecord parse_record(const json& j) {
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
        throw ParseError("crystal entry without a string 'name'");
    CrystalRecord rec;
    rec.name = j["name"].get<std::string>();
    auto fail = [&](const std::string& field, const std::string& why) -> void {
        throw ParseError("record '" + rec.name + "', field '" + field + "': " + why);
    };
    if (!j.contains("composition") || !j["composition"].is_string())
        fail("composition", "missing or not a string");
    rec.composition = j["composition"].get<std::string>();
    if (!j.contains("d_eff_pm_per_V") || !j["d_eff_pm_per_V"].is_number())
        fail("d_eff_pm_per_V", "missing or non-numeric");
    rec.d_eff_pm_per_V = j["d_eff_pm_per_V"].get<double>();
    if (!j.contains("validity_um") || !j["validity_um"].is_array() || j["validity_um"].size() != 2)
        fail("validity_um", "expected [lo, hi]");
    rec.validity_lo_um = j["validity_um"][0].get<double>();
    rec.validity_hi_um = j["validity_um"][1].get<double>();
    if (!j.contains("source") || !j["source"].is_string()) fail("source", "missing");
    rec.source = j["source"].get<std::string>();
    if (!j.contains("axes") || !j["axes"].is_object()) fail("axes", "missing or not an object");
    const char* names[3] = {"x", "y", "z"};
    for (int a = 0; a < 3; ++a) {
        if (!j["axes"].contains(names[a]))
            throw ValidationError("record '" + rec.name + "': missing axis '" +
                                  std::string(names[a]) + "'");
        rec.axes[a] = parse_form(j["axes"][names[a]], rec.name, names[a]);
    }
    return rec;
}

}  // namespace

const char* axis_name(Axis axis) {
    switch (axis) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    return "?";
}

double SellmeierForm::n_squared(double lam_um) const {
    const double l2 = lam_um * lam_um;
    double v = constant_term - infrared_term * l2;
    for (const auto& t : terms) {
        if (t.style == SellmeierTerm::Style::Ratio) {
            v += t.num * l2 / (l2 - t.pole);
        } else {
            v += t.num / (l2 - t.pole);
        }
    }
    return v;
}

double SellmeierForm::n(double lam_um) const { return std::sqrt(n_squared(lam_um)); }

double SellmeierForm::dn2_dlambda(double lam_um) const {
    const double l2 = lam_um * lam_um;
    double v = -2.0 * infrared_term * lam_um;
    for (const auto& t : terms) {
        const double d = l2 - t.pole;
        if (t.style == SellmeierTerm::Style::Ratio) {
            // d/dlam [ B l^2 / (l^2 - C) ] = -2 B C lam / (l^2 - C)^2
            v += -2.0 * t.num * t.pole * lam_um / (d * d);
        } else {
            // d/dlam [ D / (l^2 - E) ] = -2 D lam / (l^2 - E)^2
            v += -2.0 * t.num * lam_um / (d * d);
        }
    }
    return v;
}

void CrystalRecord::check_range(double lam_um) const {
    if (!in_range(lam_um)) {
        std::ostringstream os;
        os << "wavelength " << lam_um << " um outside validity range [" << validity_lo_um
           << ", " << validity_hi_um << "] um of record '" << name << "'";
        throw RangeError(os.str());
    }
}

Registry::Registry(std::vector<CrystalRecord> records) : records_(std::move(records)) {
    std::sort(records_.begin(), records_.end(),
              [](const CrystalRecord& a, const CrystalRecord& b) {
                  return upper(a.name) < upper(b.name);
              });
    for (std::size_t i = 0; i < records_.size(); ++i) {
        auto [it, inserted] = by_name_.emplace(upper(records_[i].name), i);
        if (!inserted)
            throw ValidationError("duplicate crystal name '" + records_[i].name + "'");
    }
}

bool Registry::contains(std::string_view name) const {
    return by_name_.count(upper(name)) != 0;
}

const CrystalRecord& Registry::get(std::string_view name) const {
    auto it = by_name_.find(upper(name));
    if (it == by_name_.end()) {
        std::ostringstream os;
        os << "unknown crystal '" << name << "'; known:";
        for (const auto& r : records_) os << ' ' << r.name;
        throw ValidationError(os.str());
    }
    return records_[it->second];
}

void validate_record(const CrystalRecord& rec) {
    auto fail = [&](const std::string& field, const std::string& why) -> void {
        throw ValidationError("record '" + rec.name + "', field '" + field + "': " + why);
    };
    if (rec.name.empty()) throw ValidationError("record with empty name");
    if (rec.validity_lo_um >= rec.validity_hi_um) fail("validity_um", "empty range");
    if (rec.validity_lo_um < 0.35 || rec.validity_hi_um > 3.0)
        fail("validity_um", "outside the 0.35-3 um transparency window");
    for (int a = 0; a < 3; ++a) {
        const auto& form = rec.axes[a];
        const std::string axis = axis_name(static_cast<Axis>(a));
        const double lo2 = rec.validity_lo_um * rec.validity_lo_um;
        const double hi2 = rec.validity_hi_um * rec.validity_hi_um;
        for (const auto& t : form.terms) {
            if (t.pole >= lo2 && t.pole <= hi2)
                fail("axes." + axis + ".terms.pole",
                     "pole inside the validity range (lam^2 = " + std::to_string(t.pole) + ")");
        }
        // n^2 > 1 across the declared range.
        for (int i = 0; i <= 64; ++i) {
            const double lam =
                rec.validity_lo_um + (rec.validity_hi_um - rec.validity_lo_um) * i / 64.0;
            const double n2 = form.n_squared(lam);
            if (!std::isfinite(n2) || n2 <= 1.0)
                fail("axes." + axis, "n^2 <= 1 or non-finite at " + std::to_string(lam) + " um");
        }
    }
}

Registry load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open registry file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("registry file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("crystals") || !j["crystals"].is_array())
        throw ParseError("registry file '" + path + "' lacks a 'crystals' array");
    std::vector<CrystalRecord> records;
    for (const auto& entry : j["crystals"]) {
        CrystalRecord rec = parse_record(entry);
        validate_record(rec);
        records.push_back(std::move(rec));
    }
    return Registry(std::move(records));
}

double refractive_index(const CrystalRecord& record, Axis axis, double lam_um) {
    record.check_range(lam_um);
    return record.axis(axis).n(lam_um);
}

std::vector<CrystalSummary> list_crystals(const Registry& registry) {
    std::vector<CrystalSummary> rows;
    rows.reserve(registry.size());
    for (const auto& r : registry.records())
        rows.push_back({r.name, r.composition, r.d_eff_pm_per_V, r.validity_lo_um,
                        r.validity_hi_um});
    return rows;
}

}  // namespace spdc
