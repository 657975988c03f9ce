/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

/* NaN from 0.0 / 0.0 when the input is zero. */
double nondet_double(void);

int main(void) {
  double x = nondet_double();
  double y = x / x;
  return y > 0.0;
}
