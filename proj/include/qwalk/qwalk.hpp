//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "qwalk/classify.hpp"
#include "qwalk/ctqw.hpp"
#include "qwalk/error.hpp"
#include "qwalk/generate.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/io.hpp"
#include "qwalk/matching.hpp"
#include "qwalk/merge.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/qjsd.hpp"
#include "qwalk/random.hpp"
#include "qwalk/serialize.hpp"
#include "qwalk/spectral.hpp"
