/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

/* Division by zero: the divisor is an unconstrained input. */
int nondet_int(void);

int main(void) {
  int a = nondet_int();
  int b = nondet_int();
  return a / b;
}
