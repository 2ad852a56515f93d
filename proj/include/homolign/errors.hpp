#pragma once

#include <stdexcept>
#include <string>

namespace homolign {

// Base class for every library error. Subclasses are grouped into four
// families so the CLI can map them onto distinct process exit codes.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- input / format family (exit code 2) ---------------------------------

struct parse_error : error {
    using error::error;
};

// Input parsed but does not match the declared schema (wrong joint set,
// wrong dimensionality, wrong column count, unknown config key, ...).
struct schema_mismatch : parse_error {
    using parse_error::parse_error;
};

// --- validation / numeric family (exit code 3) ---------------------------

struct validation_error : error {
    using error::error;
};

// Triplet collinear (area below threshold after conditioning) or otherwise
// unusable for fitting a map.
struct degenerate_triplet : validation_error {
    using validation_error::validation_error;
};

// One of the two per-transition maps is not invertible.
struct singular_homography : validation_error {
    using validation_error::validation_error;
};

// Eigenvalue pairing impossible: every candidate pair sum is below the
// cancellation guard.
struct numerical_degeneracy : validation_error {
    using validation_error::validation_error;
};

// Fewer valid triplets survive a transition than the configured minimum.
struct too_few_valid_triplets : validation_error {
    using validation_error::validation_error;
};

// A weighted error was requested but every triplet of the transition is
// excluded.
struct all_triplets_masked : validation_error {
    using validation_error::validation_error;
};

// Sequence / matrix shapes disagree (alignment indices out of range, row
// count mismatch, ...).
struct index_mismatch : validation_error {
    using validation_error::validation_error;
};

// A training group contains no sequences.
struct empty_group : validation_error {
    using validation_error::validation_error;
};

// Cross-group statistics requested with a single group.
struct no_other_groups : validation_error {
    using validation_error::validation_error;
};

// A sequence carries an action label absent from the reference database.
struct unknown_label : validation_error {
    using validation_error::validation_error;
};

// --- convergence family (exit code 4) ------------------------------------

// Note: the optimizer itself never throws on a hit iteration cap -- it
// returns its best iterate with converged=false.  This error exists for
// callers that choose to escalate.
struct convergence_failure : error {
    using error::error;
};

// --- io family (exit code 5) ---------------------------------------------

struct io_error : error {
    using error::error;
};

// Process exit codes used by the CLI.
enum exit_code : int {
    exit_ok = 0,
    exit_usage = 1,        // bad command line (reserved for the CLI parser)
    exit_parse = 2,        // parse_error family
    exit_validation = 3,   // validation_error family
    exit_convergence = 4,  // optimizer failed to converge
    exit_io = 5,           // io_error family
};

inline int exit_code_for(const error& e) {
    if (dynamic_cast<const parse_error*>(&e)) return exit_parse;
    if (dynamic_cast<const validation_error*>(&e)) return exit_validation;
    if (dynamic_cast<const convergence_failure*>(&e)) return exit_convergence;
    if (dynamic_cast<const io_error*>(&e)) return exit_io;
    return exit_validation;
}

}  // namespace homolign
