#pragma once

#include "lpsplit/experiment.hpp"
#include "lpsplit/graph.hpp"
#include "lpsplit/parser.hpp"
#include "lpsplit/program.hpp"
#include "lpsplit/semantics.hpp"
#include "lpsplit/split.hpp"
