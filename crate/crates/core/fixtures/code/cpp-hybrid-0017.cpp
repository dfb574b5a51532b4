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

int lowerBound(const vector<long long>& nums, long long target)
{
    // Binary search for the first element not less than target
    int left = 0;
    int right = nums.size();
    while (left < right)
    {
        int mid = (left + right) / 2;
        if (nums[mid] < target)
        {
            left = mid + 1;
        }
        else
        {
            right = mid;
        }
    }
    return left;
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

    long long q;
    cin >> q;
    for (int i = 0; i < q; ++i)
    {
        long long target;
        cin >> target;
        cout << lowerBound(nums, target) << endl;
    }
}

int main()
{
    solve();
    solve2();
    return 0;
}
