#pragma once

// Umbrella header for the scdg library: trace parsing, group dependency
// matrices, family models, similarity metrics, detection and evaluation.

#include "scdg/detector.hpp"
#include "scdg/errors.hpp"
#include "scdg/eval.hpp"
#include "scdg/family.hpp"
#include "scdg/grd.hpp"
#include "scdg/groups.hpp"
#include "scdg/matrix.hpp"
#include "scdg/rng.hpp"
#include "scdg/similarity.hpp"
#include "scdg/trace.hpp"
