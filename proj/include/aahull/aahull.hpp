#pragma once

#include "aahull/rational.hpp"
#include "aahull/affine_map.hpp"
#include "aahull/polyhedron.hpp"
#include "aahull/facets.hpp"
#include "aahull/digit_maps.hpp"
#include "aahull/graph.hpp"
#include "aahull/automaton.hpp"
#include "aahull/analysis.hpp"
#include "aahull/decimal_hull.hpp"
#include "aahull/fixpoint.hpp"
#include "aahull/pipeline.hpp"
#include "aahull/constraints.hpp"
