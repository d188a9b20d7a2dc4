#pragma once

// Sublinear detection of length-k increasing subsequences: query views with
// masking, exact oracles, structural certificates, the adaptive randomized
// search, certified instance generators and a measurement harness.

#include "monopat/constants.hpp"
#include "monopat/exact.hpp"
#include "monopat/generators.hpp"
#include "monopat/harness.hpp"
#include "monopat/rng.hpp"
#include "monopat/structure.hpp"
#include "monopat/tester.hpp"
#include "monopat/view.hpp"
