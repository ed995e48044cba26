#include "gkp/io.hpp"

#include <cstdio>

#include <json.hpp>

#include "gkp/errors.hpp"

namespace gkp {

using nlohmann::json;

Quadrature parse_quadrature(std::string_view text) {
    if (text == "position" || text == "q") return Quadrature::position;
    if (text == "momentum" || text == "p") return Quadrature::momentum;
    throw ParseError("unknown quadrature '" + std::string(text) + "'");
}

std::string grid_to_csv(const GridState& grid) {
    std::string out = "coordinate,re,im,density\n";
    char line[128];
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const cplx a = grid[k];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", grid.spec().coordinate(k), a.real(), a.imag(),
                      std::norm(a));
        out += line;
    }
    return out;
}

std::string grid_to_json(const GridState& grid) {
    json re = json::array();
    json im = json::array();
    for (const cplx& a : grid.amplitudes()) {
        re.push_back(a.real());
        im.push_back(a.imag());
    }
    json doc = {{"axis", std::string(to_string(grid.axis()))},
                {"origin", grid.spec().origin},
                {"spacing", grid.spec().spacing},
                {"size", grid.size()},
                {"re", std::move(re)},
                {"im", std::move(im)}};
    return doc.dump();
}

GridState grid_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        GridSpec spec{parse_quadrature(doc.at("axis").get<std::string>()), doc.at("origin").get<double>(),
                      doc.at("spacing").get<double>(), doc.at("size").get<std::size_t>()};
        const auto& re = doc.at("re");
        const auto& im = doc.at("im");
        if (re.size() != spec.size || im.size() != spec.size) throw ParseError("grid amplitude length mismatch");
        std::vector<cplx> amps(spec.size);
        for (std::size_t k = 0; k < spec.size; ++k) amps[k] = {re[k].get<double>(), im[k].get<double>()};
        return GridState(spec, std::move(amps));
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid grid json: ") + e.what());
    }
}

std::string comb_to_json(const GaussianComb& comb) {
    json peaks = json::array();
    for (const Peak& p : comb.peaks()) peaks.push_back({{"mu", p.center}, {"re", p.coeff.real()}, {"im", p.coeff.imag()}});
    json doc = {{"delta", comb.width()},
                {"axis", std::string(to_string(comb.axis()))},
                {"dual_shift", comb.dual_shift()},
                {"peaks", std::move(peaks)}};
    return doc.dump();
}

GaussianComb comb_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        std::vector<Peak> peaks;
        for (const auto& p : doc.at("peaks")) {
            peaks.push_back({p.at("mu").get<double>(), {p.at("re").get<double>(), p.at("im").get<double>()}});
        }
        return GaussianComb(doc.at("delta").get<double>(), parse_quadrature(doc.at("axis").get<std::string>()),
                            std::move(peaks), doc.value("dual_shift", 0.0));
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid comb json: ") + e.what());
    }
}

}  // namespace gkp
