#pragma once

#include "dsmt/errors.hpp"
#include "dsmt/venn.hpp"
#include "dsmt/hyperpowerset.hpp"
#include "dsmt/expr.hpp"
#include "dsmt/fusion.hpp"
#include "dsmt/oracles.hpp"
#include "dsmt/bba_io.hpp"
