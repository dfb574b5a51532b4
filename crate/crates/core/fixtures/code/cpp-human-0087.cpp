#include <bits/stdc++.h>
using namespace std;

void work() {
   // Read the input
   int n; cin >> n;
   vector<int> a(n);
   for(auto &x : a) cin >> x;
   int g = 0;
   for(int i = 0; i < n; i++) {
      int x = a[i];
      int y = g;
      while(y!=0) {
         int yqz = x%y;
         x = y ;
         y = yqz ;
      }
      g = x;
   }
   cout << g << "\n";
}

void solve() {
   // Read the input
   int n;
   cin >> n;
   vector<int> xb(n);
   for (auto &x : xb) cin >> x;

   int q; cin >> q ;
   for(int i = 0; i < q; i++) {
      int bgj; cin >> bgj;
      int lo = 0;
      int r = n;
      while(lo<r) {
         int m = (lo+r) / 2;
         if (xb[m]<bgj) {
            lo = m+1;
         } else {
            r = m;
         }
      }
      cout << lo << "\n";
   }
}

void f() {
   // Read the input
   int n;
   cin >> n;
   vector<int> a(n);
   for(auto &x : a) cin >> x;

   int gk0;
   cin >> gk0;
   int c = 0 ;
   for(int i = 0; i < n; i++) {
      for (int j = i+1; j < n; j++) {
         if(a[i]+a[j]==gk0 )
            c++ ;
      }
   }
   cout << c << "\n";
}

void work4() {
   // Read the input
   int n; cin >> n;
   int steps = 0;
   while( n!=1) {
      if(n % 2==0) {
         n = n/2;
      } else {
         n = 3*n+1;
      }
      steps++;
   }
   cout  << steps << "\n";
}

int main() {
   work();
   solve();
   f();
   work4();
}
