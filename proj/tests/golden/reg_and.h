#ifndef NLC_GEN_REG_AND_H
#define NLC_GEN_REG_AND_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* One call is one evaluation pass. Inputs by value, outputs through
 * pointers, in port declaration order. A port narrower than its C type
 * occupies the low bits: unused input bits are ignored, unused output
 * bits are written as zero. Flip-flop state is global to the process. */
/* input clk: 1 bit */
/* input a: 1 bit */
/* input b: 1 bit */
/* output out: 1 bit */
void reg_and(uint8_t clk, uint8_t a, uint8_t b, uint8_t* out);

#ifdef __cplusplus
}
#endif

#endif
