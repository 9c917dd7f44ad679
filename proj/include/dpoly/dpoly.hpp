#pragma once

// Umbrella header for the doubled-polygon geodesics library.

#include "dpoly/geometry.hpp"
#include "dpoly/metric.hpp"
#include "dpoly/geodesic.hpp"
#include "dpoly/analysis.hpp"
#include "dpoly/search.hpp"
#include "dpoly/io.hpp"
#include "dpoly/render.hpp"
