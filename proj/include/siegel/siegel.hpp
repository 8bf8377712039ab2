#pragma once

#include "siegel/types.hpp"
#include "siegel/quadrature.hpp"
#include "siegel/parallel.hpp"
#include "siegel/siegel_core.hpp"
#include "siegel/convex_hull.hpp"
#include "siegel/convex_geom.hpp"
#include "siegel/lattice.hpp"
#include "siegel/measure.hpp"
#include "siegel/sampling.hpp"
#include "siegel/synth_1d.hpp"
#include "siegel/synth_heis.hpp"
#include "siegel/stats.hpp"
#include "siegel/json_io.hpp"
#include "siegel/report.hpp"
