#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace polyperiod {

/* Exit codes used by the CLI; library errors carry the matching code. */
enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_FAILURE_GENERIC = 1,
    EXIT_VALIDATION = 2,
    EXIT_GENUS_ZERO = 3,
    EXIT_SOLVER = 4,
    EXIT_GENUS_MISMATCH = 5,
};

/* Input failed structural validation (parse error, non-manifold mesh,
 * inconsistent orientation, Delaunay violation, bad gluing, ...). */
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const { return EXIT_VALIDATION; }
    virtual ~ValidationError() = default;
};

/* Parse failure with a 1-based line number of the offending record. */
struct ParseError : ValidationError {
    int line;
    ParseError(int line_, const std::string& msg)
        : ValidationError("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/* One or more edges violate the strict Delaunay condition rho > tol;
 * all offending edges are listed as (tail, head, rho) triples. */
struct DelaunayViolation : ValidationError {
    std::vector<std::tuple<int, int, double>> edges;
    DelaunayViolation(const std::string& msg, std::vector<std::tuple<int, int, double>> edges_)
        : ValidationError(msg), edges(std::move(edges_)) {}
};

/* The surface has genus 0: there are no cycles and no period matrix. */
struct GenusZeroError : ValidationError {
    explicit GenusZeroError(const std::string& msg) : ValidationError(msg) {}
    int exit_code() const override { return EXIT_GENUS_ZERO; }
};

/* A linear solve failed or did not reach the required residual. */
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Two period matrices of different genus were compared. */
struct GenusMismatchError : std::runtime_error {
    explicit GenusMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace polyperiod
