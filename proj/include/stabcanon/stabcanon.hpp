#pragma once

#include "stabcanon/circuit.hpp"
#include "stabcanon/czsynth.hpp"
#include "stabcanon/linear.hpp"
#include "stabcanon/oracle.hpp"
#include "stabcanon/phasepoly.hpp"
#include "stabcanon/pipeline.hpp"
#include "stabcanon/reversal.hpp"
#include "stabcanon/tableau.hpp"
