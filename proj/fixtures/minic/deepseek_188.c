#include <assert.h>
#include <stdio.h>
#include <stdlib.h>

int furthestDistanceFromOrigin(const char* moves){
  int left = 0;
  int right = 0;
  int a = 0;
  int ret = 0;

  for (int i = 0; moves[i] != '\0'; i++) {
      if (moves[i] == 'L') {
        left++;
      } else if (moves[i] == 'R') {
        right++;
      } else {
        a++;
    }
  }

  ret = abs(left - right) + a;
  return ret;
}

int main() {
  const char* moves = "L_RL__R";
  assert(furthestDistanceFromOrigin(moves)==3);
  return 0;
}
