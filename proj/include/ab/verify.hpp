#ifndef AB_VERIFY_HPP
#define AB_VERIFY_HPP

#include "ab/extparam.hpp"
#include "ab/serialize.hpp"

#include <map>
#include <string>
#include <vector>

namespace ab {

struct Check {
    std::string name;
    std::string tol_key;  ///< overridable through --tol-KEY=V
    double residual;
    double tol;
    bool pass;
};

struct VerifyReport {
    std::string suite;
    std::vector<Check> checks;

    bool pass() const;
    const Check* first_failure() const;
    json to_json() const;
};

using Tolerances = std::map<std::string, double>;

/// Default tolerance per key: anchor, round_trip, wronskian, resolvent, conjugation.
double tolerance(const Tolerances& over, const std::string& key);

/// Suites: "anchors", "specfun", "resolvent", "all".
VerifyReport run_verify(const std::string& suite, const Tolerances& over = {});

/// First resolvent identity and conjugation symmetry for one extension on
/// fixed Gaussian inputs.
std::vector<Check> resolvent_checks(const ExtensionSpec& spec, cd z, cd w, const Tolerances& over = {});

} // namespace ab

#endif
