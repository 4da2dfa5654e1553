#ifndef HVBOX_HVBOX_HPP
#define HVBOX_HVBOX_HPP

#include "core.hpp"
#include "decomp.hpp"
#include "instances.hpp"
#include "lub.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "spatial.hpp"
#include "store.hpp"
#include "wfg.hpp"

#endif  // HVBOX_HVBOX_HPP
