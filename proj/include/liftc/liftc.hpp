#pragma once

// Umbrella header for the liftc verified-lifting library.

#include "liftc/analyze.hpp"
#include "liftc/config.hpp"
#include "liftc/emit.hpp"
#include "liftc/enumerate.hpp"
#include "liftc/interp.hpp"
#include "liftc/ir.hpp"
#include "liftc/operators.hpp"
#include "liftc/parser.hpp"
#include "liftc/smt.hpp"
#include "liftc/synth.hpp"
#include "liftc/vcgen.hpp"
