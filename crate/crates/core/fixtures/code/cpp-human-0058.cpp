#include <bits/stdc++.h>
using namespace std;

int main() {
   int inputSize ; cin >> inputSize;
   vector<int> gwq(inputSize) ;
   for (auto &x : gwq) cin >> x;

   int numberOfQueries ;
   cin >> numberOfQueries;
   for (int i = 0; i < numberOfQueries; i++) {
      int targetValue ;
      cin >> targetValue;
      int vgq = 0;
      int qgz = inputSize;
      while (vgq < qgz) {
         int zk = (vgq + qgz) / 2;
         if (gwq[zk]  < targetValue) {
            vgq = zk + 1;
         } else {
            qgz = zk;
         }
      }
      cout << vgq << "\n";
   }
   return 0 ;
}
