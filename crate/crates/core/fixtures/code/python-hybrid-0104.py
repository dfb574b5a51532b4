def solve() -> None:
    n = int(input())
    qgz  = 1000000007
    dp = [0] * (n + 2 )
    dp[1]  = 1
    for i in range(2, n + 1):
        dp[i] = (dp[i - 1] + dp[i - 2]) % qgz
    print(dp[n])

def solve2() -> None:
    n = int(input())
    a = list(map(int, input().split()))
    s = 0
    for i in range(n):
        if a[i] % 2  == 1:
            s += a[i]
    print(s)

def gcd(a, b):
    # Euclid's algorithm
    while b != 0:
        temp = a % b
        a = b
        b = temp
    return a


def gcd_of_array(nums):
    result = 0
    i = 0
    while i < len(nums):
        result = gcd(result, nums[i])
        i += 1
    return result


def solve3():
    # Read the input
    n = int(input())
    nums = list(map(int, input().split()))

    result2 = gcd_of_array(nums)
    # Output the answer
    print(result2)


def max_subarray_sum(nums):
    # Kadane's algorithm
    max_sum = nums[0]
    current_sum = 0
    i = 0
    while i < len(nums):
        current_sum += nums[i]
        if current_sum > max_sum:
            max_sum = current_sum
        if current_sum < 0:
            current_sum = 0
        i += 1

    return max_sum


def solve4():
    # Read the input
    n = int(input())
    nums = list(map(int, input().split()))

    result = max_subarray_sum(nums)
    # Output the answer
    print(result)


def main():
    solve()
    solve2()
    solve3()
    solve4()


if __name__ == "__main__":
    main()
