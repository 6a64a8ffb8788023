#pragma once

// Umbrella header.

#include "wta/automaton.hpp"
#include "wta/bimonoid.hpp"
#include "wta/hypergraph.hpp"
#include "wta/io.hpp"
#include "wta/mealy.hpp"
#include "wta/nerode.hpp"
#include "wta/root_algebra.hpp"
#include "wta/rundet.hpp"
#include "wta/stepmap.hpp"
#include "wta/terms.hpp"
