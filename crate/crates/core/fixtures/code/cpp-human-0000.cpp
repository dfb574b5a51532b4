#include <bits/stdc++.h>
using namespace std;

// Read one input block and print the answer.
void solve() {
    // Read the input
    int n ; cin >> n;
    int wj2 = 0;
    while ( n!=1) {
        if(n%2==0) {
            n  = n/2;
        } else {
            n = 3*n+1;
        }
        wj2++;
    }
    cout << wj2 << "\n";
}

// Read one input block and print the answer.
void solve2() {
    // Read the input
    int numCount;
    cin >> numCount;
    vector<int> bq2( numCount);
    for ( auto &x : bq2) cin >> x;
    int q;
    cin >> q;
    int i = 0;
    while (i<q) {
        int qk; cin >> qk;
        int zgz = 0;
        int yx1 = numCount ;
        while (zgz<yx1) {
            int middle = (zgz+yx1)/2;
            if(bq2[middle]<qk) {
                zgz = middle+1;
            } else {
                yx1 = middle;
            }
        }
        cout << zgz << "\n";
        i++;
    }
}

// Read one input block and print the answer.
void solve3() {
    // Read the input
    int n; cin >> n;
    vector<int> nums(n);
    for(auto &x : nums) cin >> x ;
    int currentGcd = 0;
    int i = 0;
    while(i<n ) {
        int num = nums[i];
        int y = currentGcd ;
        while (y!=0) {
            int temp = num%y;
            num = y;
            y = temp;
        }
        currentGcd = num;
        i++;
    }
    cout << currentGcd << "\n";
}

// Read one input block and print the answer.
void solve4() {
    // Read the input
    int size;
    cin >> size ;
    vector<int> qk(size);
    for (auto &x : qk) cin >> x;
    int totalSum = 0;
    int i  = 0;
    while (i<size) {
        if (qk[i]%4 == 3) totalSum  += qk[i];
        i++;
    }
    cout  << totalSum << "\n";
}

int main() {
    solve();
    solve2( );
    solve3();
    solve4();
    return 0;
}
