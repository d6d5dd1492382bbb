#pragma once

#include "ipomset/error.hpp"
#include "ipomset/mask.hpp"
#include "ipomset/relation.hpp"
#include "ipomset/core.hpp"
#include "ipomset/letter.hpp"
#include "ipomset/loset.hpp"
#include "ipomset/steps.hpp"
#include "ipomset/subsume.hpp"
#include "ipomset/hda.hpp"
#include "ipomset/sta.hpp"
#include "ipomset/io.hpp"
