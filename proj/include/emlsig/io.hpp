#ifndef EMLSIG_IO_HPP
#define EMLSIG_IO_HPP

#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "emlsig/eml.hpp"
#include "emlsig/path.hpp"
#include "emlsig/polynomial_map.hpp"
#include "emlsig/random.hpp"
#include "emlsig/tensor.hpp"

namespace emlsig {

using Json = nlohmann::json;

/// Malformed input file; the message names the offending row or field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"dim": d, "depth": p, "levels": [[scalar], [d entries], ...]}
Json tensor_to_json(const TruncatedTensor& t);
TruncatedTensor tensor_from_json(const Json& j);

/// {"in_dim": d, "out_dim": e, "entries": [{"row", "col", "monomials": [{"exps", "coef"}]}]}
Json poly_map_to_json(const PolynomialMap& f);
PolynomialMap poly_map_from_json(const Json& j);

/// {"direction", "order", "lhs", "integral", "boundary", "remainder", "residual"}
Json report_to_json(const EmlReport& r);

/// CSV with header "t,x1,...,xd" and one row per knot. Repeated times with
/// identical values are merged; conflicting repeats or decreasing times throw.
PiecewiseLinearPath read_path_csv(std::istream& in, const std::string& source = "<csv>");
PiecewiseLinearPath read_path_csv_file(const std::string& filename);

/// {"members": [{"weight": w, "times": [...], "values": [[...], ...]}, ...]}
PathEnsemble ensemble_from_json(const Json& j);

Json read_json_file(const std::string& filename);

/// Random path on [0, N] with integer knots, x_0 = 0 and increments uniform in [-1, 1]^d.
PiecewiseLinearPath random_path(Rng& rng, std::size_t dim, std::size_t horizon);
/// Integer-valued series with x_0 = 0 and increments uniform in {lo, ..., hi}^d.
TimeSeries random_integer_series(Rng& rng, std::size_t dim, std::size_t horizon, long long lo,
                                 long long hi);
/// `path` together with `count` random paths of the same shape, equal weights.
/// Path i is drawn from split_seed(seed, i).
PathEnsemble seeded_ensemble(const PiecewiseLinearPath& path, std::uint64_t seed, std::size_t count);

} // namespace emlsig

#endif // EMLSIG_IO_HPP
