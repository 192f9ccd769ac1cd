#pragma once

// Umbrella header for the library (everything except the CLI front end).

#include "pforest/connectivity.hpp"
#include "pforest/dot.hpp"
#include "pforest/error.hpp"
#include "pforest/forest.hpp"
#include "pforest/gadget.hpp"
#include "pforest/graph.hpp"
#include "pforest/hardness.hpp"
#include "pforest/matching.hpp"
#include "pforest/oracle.hpp"
#include "pforest/transform.hpp"
