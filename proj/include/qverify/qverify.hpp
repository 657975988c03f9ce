/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/block_encoding.hpp"
#include "qverify/cnf.hpp"
#include "qverify/error.hpp"
#include "qverify/export.hpp"
#include "qverify/filter.hpp"
#include "qverify/gap.hpp"
#include "qverify/ising.hpp"
#include "qverify/model_checker.hpp"
#include "qverify/optimizers.hpp"
#include "qverify/oracle.hpp"
#include "qverify/pipeline.hpp"
#include "qverify/qubo.hpp"
#include "qverify/random.hpp"
#include "qverify/rational.hpp"
#include "qverify/simulator.hpp"
#include "qverify/solvers/grover.hpp"
#include "qverify/solvers/instance.hpp"
#include "qverify/solvers/qsvt.hpp"
#include "qverify/solvers/report.hpp"
#include "qverify/solvers/vqa.hpp"
#include "qverify/synthetic.hpp"
