#pragma once

// Umbrella header: exact integer cohomology rings of 7-manifolds built by
// fold-map surgery, with the surgery pipeline, obstruction analysis and
// JSON document layer.

#include "foldring/analysis.hpp"
#include "foldring/construction.hpp"
#include "foldring/diagnostics.hpp"
#include "foldring/integers.hpp"
#include "foldring/json_io.hpp"
#include "foldring/matrix.hpp"
#include "foldring/ring.hpp"
#include "foldring/surgery.hpp"
