#include "emlsig/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace emlsig {

Json tensor_to_json(const TruncatedTensor& t) {
    Json levels = Json::array();
    for (std::size_t k = 0; k <= t.depth(); ++k) {
        const auto lvl = t.level(k);
        levels.push_back(std::vector<double>(lvl.begin(), lvl.end()));
    }
    return Json{{"dim", t.dim()}, {"depth", t.depth()}, {"levels", std::move(levels)}};
}

TruncatedTensor tensor_from_json(const Json& j) {
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        const auto depth = j.at("depth").get<std::size_t>();
        const auto& levels = j.at("levels");
        if (dim == 0)
            throw ParseError("tensor: dim must be positive");
        if (levels.size() != depth + 1)
            throw ParseError("tensor: expected " + std::to_string(depth + 1) + " levels, got " +
                             std::to_string(levels.size()));
        TruncatedTensor t(dim, depth);
        for (std::size_t k = 0; k <= depth; ++k) {
            const auto values = levels[k].get<std::vector<double>>();
            auto dst = t.level(k);
            if (values.size() != dst.size())
                throw ParseError("tensor: level " + std::to_string(k) + " has " +
                                 std::to_string(values.size()) + " entries, expected " +
                                 std::to_string(dst.size()));
            std::copy(values.begin(), values.end(), dst.begin());
        }
        return t;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("tensor: ") + e.what());
    }
}

Json poly_map_to_json(const PolynomialMap& f) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < f.out_dim(); ++r)
        for (std::size_t c = 0; c < f.in_dim(); ++c) {
            const auto& p = f.entry(r, c);
            if (p.empty())
                continue;
            Json monomials = Json::array();
            for (const auto& [exps, coef] : p)
                monomials.push_back({{"exps", exps}, {"coef", coef}});
            entries.push_back({{"row", r}, {"col", c}, {"monomials", std::move(monomials)}});
        }
    return Json{{"in_dim", f.in_dim()}, {"out_dim", f.out_dim()}, {"entries", std::move(entries)}};
}

PolynomialMap poly_map_from_json(const Json& j) {
    try {
        PolynomialMap f(j.at("in_dim").get<std::size_t>(), j.at("out_dim").get<std::size_t>());
        for (const auto& entry : j.at("entries")) {
            const auto row = entry.at("row").get<std::size_t>();
            const auto col = entry.at("col").get<std::size_t>();
            for (const auto& m : entry.at("monomials"))
                f.add_monomial(row, col, m.at("exps").get<std::vector<unsigned>>(),
                               m.at("coef").get<double>());
        }
        return f;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("polynomial map: ") + e.what());
    } catch (const std::logic_error& e) {
        throw ParseError(std::string("polynomial map: ") + e.what());
    }
}

Json report_to_json(const EmlReport& r) {
    return Json{{"direction", to_string(r.direction)},
                {"order", r.order},
                {"lhs", r.lhs},
                {"integral", r.integral},
                {"boundary", r.boundary},
                {"remainder", r.remainder},
                {"rhs", r.rhs},
                {"residual", r.residual}};
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, const std::string& where) {
    const std::string f = trim(field);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(f, &used);
    } catch (const std::exception&) {
        throw ParseError(where + ": '" + f + "' is not a number");
    }
    if (used != f.size() || !std::isfinite(v))
        throw ParseError(where + ": '" + f + "' is not a finite number");
    return v;
}

} // namespace

PiecewiseLinearPath read_path_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t row = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++row;
        if (!trim(line).empty()) {
            header = split_fields(line);
            break;
        }
    }
    if (header.size() < 2 || trim(header[0]) != "t")
        throw ParseError(source + " row " + std::to_string(row) +
                         ": header must be t,x1,...,xd");
    const std::size_t dim = header.size() - 1;

    std::vector<double> times;
    std::vector<std::vector<double>> values;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty())
            continue;
        const std::string where = source + " row " + std::to_string(row);
        const auto fields = split_fields(line);
        if (fields.size() != dim + 1)
            throw ParseError(where + ": expected " + std::to_string(dim + 1) + " fields, got " +
                             std::to_string(fields.size()));
        const double t = parse_number(fields[0], where);
        std::vector<double> x(dim);
        for (std::size_t i = 0; i < dim; ++i)
            x[i] = parse_number(fields[i + 1], where);
        if (!times.empty()) {
            if (t < times.back())
                throw ParseError(where + ": time " + trim(fields[0]) + " decreases");
            if (t == times.back()) {
                if (x != values.back())
                    throw ParseError(where + ": repeated time " + trim(fields[0]) +
                                     " with different values");
                continue;
            }
        }
        times.push_back(t);
        values.push_back(std::move(x));
    }
    if (times.size() < 2)
        throw ParseError(source + ": need at least two distinct knots");
    return PiecewiseLinearPath(std::move(times), std::move(values));
}

PiecewiseLinearPath read_path_csv_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in)
        throw ParseError("cannot open " + filename);
    return read_path_csv(in, filename);
}

PathEnsemble ensemble_from_json(const Json& j) {
    try {
        std::vector<WeightedPath> members;
        std::size_t idx = 0;
        for (const auto& m : j.at("members")) {
            try {
                members.push_back({PiecewiseLinearPath(m.at("times").get<std::vector<double>>(),
                                                       m.at("values").get<std::vector<std::vector<double>>>()),
                                   m.at("weight").get<double>()});
            } catch (const std::invalid_argument& e) {
                throw ParseError("ensemble member " + std::to_string(idx) + ": " + e.what());
            }
            ++idx;
        }
        return PathEnsemble(std::move(members));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("ensemble: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("ensemble: ") + e.what());
    }
}

Json read_json_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in)
        throw ParseError("cannot open " + filename);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(filename + ": " + e.what());
    }
}

PiecewiseLinearPath random_path(Rng& rng, std::size_t dim, std::size_t horizon) {
    std::vector<double> times;
    std::vector<std::vector<double>> values;
    std::vector<double> x(dim, 0.0);
    for (std::size_t k = 0; k <= horizon; ++k) {
        times.push_back(static_cast<double>(k));
        values.push_back(x);
        for (auto& xi : x)
            xi += rng.uniform(-1.0, 1.0);
    }
    return PiecewiseLinearPath(std::move(times), std::move(values));
}

TimeSeries random_integer_series(Rng& rng, std::size_t dim, std::size_t horizon, long long lo,
                                 long long hi) {
    std::vector<std::vector<double>> values;
    std::vector<double> x(dim, 0.0);
    for (std::size_t k = 0; k <= horizon; ++k) {
        values.push_back(x);
        for (auto& xi : x)
            xi += static_cast<double>(rng.integer(lo, hi));
    }
    return TimeSeries(std::move(values));
}

PathEnsemble seeded_ensemble(const PiecewiseLinearPath& path, std::uint64_t seed,
                             std::size_t count) {
    const double w = 1.0 / static_cast<double>(count + 1);
    std::vector<WeightedPath> members{{path, w}};
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(split_seed(seed, i));
        members.push_back({random_path(rng, path.dim(), path.horizon()), w});
    }
    return PathEnsemble(std::move(members));
}

} // namespace emlsig
