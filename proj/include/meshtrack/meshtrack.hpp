#pragma once

// Umbrella header for the face-mesh tracking toolkit.

#include "meshtrack/bench.hpp"
#include "meshtrack/brush.hpp"
#include "meshtrack/config.hpp"
#include "meshtrack/crop.hpp"
#include "meshtrack/errors.hpp"
#include "meshtrack/filter.hpp"
#include "meshtrack/geodesic.hpp"
#include "meshtrack/geometry.hpp"
#include "meshtrack/harness.hpp"
#include "meshtrack/mesh.hpp"
#include "meshtrack/mesh_io.hpp"
#include "meshtrack/metrics.hpp"
#include "meshtrack/subdivision.hpp"
#include "meshtrack/trace.hpp"
#include "meshtrack/tracking.hpp"
