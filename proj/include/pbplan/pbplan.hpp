#ifndef PBPLAN_PBPLAN_HPP
#define PBPLAN_PBPLAN_HPP

#include "pbplan/agent.hpp"
#include "pbplan/bias_set.hpp"
#include "pbplan/families.hpp"
#include "pbplan/formats.hpp"
#include "pbplan/incentives.hpp"
#include "pbplan/rational.hpp"
#include "pbplan/reduction.hpp"
#include "pbplan/report.hpp"
#include "pbplan/task_graph.hpp"
#include "pbplan/vector_scheduling.hpp"

#endif
