#pragma once

#include "closure_lab/error.hpp"
#include "closure_lab/ring_spec.hpp"
#include "closure_lab/finite_ring.hpp"
#include "closure_lab/ideal.hpp"
#include "closure_lab/closure.hpp"
#include "closure_lab/vnr.hpp"
#include "closure_lab/harness.hpp"
#include "closure_lab/report.hpp"
#include "closure_lab/cli.hpp"
