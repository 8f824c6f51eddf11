#pragma once

#include <stdexcept>
#include <string>

namespace flowgate {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// topology
struct MalformedTopology : Error { using Error::Error; };
struct UnknownNode : Error { using Error::Error; };
struct UnknownLink : Error { using Error::Error; };

// dataplane
struct PathMismatch : Error { using Error::Error; };

// controller
struct InvalidInterval : Error { using Error::Error; };

// admission
struct PreconditionViolated : Error { using Error::Error; };

// metrics
struct CounterInversion : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct NoDeliveredTraffic : Error { using Error::Error; };

// scenario / sweep files
struct ScenarioError : Error { using Error::Error; };

}  // namespace flowgate
