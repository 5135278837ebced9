#pragma once

#include <stdexcept>
#include <string>

namespace mapmob {

// Domain error with a stable machine-readable name. The CLI prints the name
// verbatim and exits 1; tests match on it.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& detail)
        : std::runtime_error(detail.empty() ? name : name + ": " + detail),
          name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define MAPMOB_DEFINE_ERROR(Name)                                        \
    class Name : public DomainError {                                    \
    public:                                                              \
        explicit Name(const std::string& detail = "")                    \
            : DomainError(#Name, detail) {}                              \
    }

// map-core
MAPMOB_DEFINE_ERROR(NotInvolution);
MAPMOB_DEFINE_ERROR(NotConnected);
MAPMOB_DEFINE_ERROR(NonPlanar);
MAPMOB_DEFINE_ERROR(BadColoring);
MAPMOB_DEFINE_ERROR(BadMarker);

// mobile-core
MAPMOB_DEFINE_ERROR(MalformedTree);
MAPMOB_DEFINE_ERROR(NotInSubclass);

// bijection
MAPMOB_DEFINE_ERROR(NotBipartite);
MAPMOB_DEFINE_ERROR(NotEulerian);
MAPMOB_DEFINE_ERROR(NotWellLabeled);

// gf-engine
MAPMOB_DEFINE_ERROR(WindowTooNarrow);
MAPMOB_DEFINE_ERROR(BadSupport);
MAPMOB_DEFINE_ERROR(IndexBeyondStabilization);

// sampler
MAPMOB_DEFINE_ERROR(RejectionBudgetExhausted);
MAPMOB_DEFINE_ERROR(WeightsOutOfRange);

// Signals a broken internal invariant (a bug), never a bad input.
MAPMOB_DEFINE_ERROR(InternalError);

#undef MAPMOB_DEFINE_ERROR

}  // namespace mapmob
