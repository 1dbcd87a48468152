#pragma once

#include "cnfkit/cps.hpp"
#include "cnfkit/dimacs.hpp"
#include "cnfkit/direct.hpp"
#include "cnfkit/errors.hpp"
#include "cnfkit/formula.hpp"
#include "cnfkit/machine.hpp"
#include "cnfkit/options.hpp"
#include "cnfkit/oracle.hpp"
#include "cnfkit/post.hpp"
#include "cnfkit/syntax.hpp"
#include "cnfkit/trace.hpp"
#include "cnfkit/wf.hpp"
