#include <iostream>
#include <vector>
using namespace std;

// Greatest common divisor of two numbers.
long long gcd(long long a, long long b) {
  while (b != 0) {
    long long temp = a % b;
    a = b;
    b = temp;
  }
  return a;
}

// Greatest common divisor of all elements.
long long gcdOfArray(const vector<long long>& nums) {
  if (nums.size() == 0) {
    return 0;
  }
  long long result = 0;
  for (int i = 0; i < nums.size(); ++i) {
    result = gcd(result, nums[i]);
  }
  return result;
}

// Read one input block and print the answer.
void solve() {
  long long n;
  cin >> n;
  vector<long long> nums(n);
  for (int i = 0; i < n; ++i) {
    cin >> nums[i];
  }
  cout << gcdOfArray(nums) << endl;
}

// Sum of the decimal digits of a number.
long long digitSum(long long num) {
  long long total = 0;
  while (num > 0) {
    total += num % 10;
    num = num / 10;
  }
  return total;
}

// Read one input block and print the answer.
void solve2() {
  long long n;
  cin >> n;
  long long result = 0;
  for (int i = 0; i < n; ++i) {
    long long num;
    cin >> num;
    result += digitSum(num);
  }
  cout << result << endl;
}

int main() {
  solve();
  solve2();
  return 0;
}
