#include <iostream>
#include <vector>
using namespace std;

long long digitSum(long long num)
{
    // Add up the decimal digits
    long long total = 0;
    while (num > 0)
    {
        total += num % 10;
        num = num / 10;
    }
    return total;
}

void solve()
{
    // Read the input
    long long n;
    cin >> n;
    long long result = 0;
    for (int i = 0; i < n; ++i)
    {
        long long num;
        cin >> num;
        result += digitSum(num);
    }

    cout << result << endl;
}

long long sumMatching(const vector<long long>& nums)
{
    if (nums.size() == 0)
    {
        return 0;
    }
    // Accumulate the values that match the condition
    long long total = 0;
    for (int i = 0; i < nums.size(); ++i)
    {
        if (nums[i] % 2 == 0)
        {
            total += nums[i];
        }
    }

    return total;
}

void solve2()
{
    // Read the input
    long long n;
    cin >> n;
    vector<long long> nums(n);
    for (int i = 0; i < n; ++i)
    {
        cin >> nums[i];
    }

    long long result = sumMatching(nums);
    // Output the answer
    cout << result << endl;
}

int main()
{
    solve();
    solve2();
    return 0;
}
