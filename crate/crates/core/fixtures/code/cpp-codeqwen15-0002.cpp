#include <iostream>
#include <vector>
using namespace std;

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
void solve() {
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

// Number of pairs whose sum equals the target.
long long countPairs(const vector<long long>& nums, long long target) {
  if (nums.size() == 0) {
    return 0;
  }
  long long count = 0;
  for (int i = 0; i < nums.size(); ++i) {
    for (int j = i + 1; j < nums.size(); ++j) {
      if (nums[i] + nums[j] == target) {
        ++count;
      }
    }
  }
  return count;
}

// Read one input block and print the answer.
void solve2() {
  long long n;
  cin >> n;
  vector<long long> nums(n);
  for (int i = 0; i < n; ++i) {
    cin >> nums[i];
  }
  long long target;
  cin >> target;
  cout << countPairs(nums, target) << endl;
}

int main() {
  solve();
  solve2();
  return 0;
}
