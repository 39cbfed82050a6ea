#pragma once

#include "gconn/types.hpp"
#include "gconn/parallel.hpp"
#include "gconn/graph.hpp"
#include "gconn/generators.hpp"
#include "gconn/dset.hpp"
#include "gconn/forest.hpp"
#include "gconn/minbased.hpp"
#include "gconn/sampling.hpp"
#include "gconn/validate.hpp"
#include "gconn/driver.hpp"
#include "gconn/bench.hpp"
