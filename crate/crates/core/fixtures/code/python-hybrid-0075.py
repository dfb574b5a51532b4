def count_pairs(nums: list[int], target: int) -> int:
    """Number of pairs whose sum equals the target."""
    if len(nums) == 0:
        return 0
    count = 0
    for i in range(len(nums)):
        for j in range(i + 1, len(nums)):
            if nums[i] + nums[j] == target:
                count += 1

    return count


def solve() -> None:
    """Read one input block and print the answer."""
    n = int(input())
    nums = list(map(int, input().split()))

    target = int(input())

    print(count_pairs(nums, target))


def sum_matching(nums: list[int]) -> int:
    """Return the sum of the elements that satisfy the filter."""
    if len(nums) == 0:
        return 0
    total = 0
    for i in range(len(nums)):
        if nums[i] % 5 == 3:
            total += nums[i]

    return total


def solve2() -> None:
    """Read one input block and print the answer."""
    n = int(input())
    nums = list(map(int, input().split()))

    print(sum_matching(nums))


def lower_bound(nums: list[int], target: int) -> int:
    """Index of the first element that is not less than the target."""
    left = 0
    right = len(nums)
    while left < right:
        mid = (left + right) // 2
        if nums[mid] < target:
            left = mid + 1
        else:
            right = mid
    return left


def solve3() -> None:
    """Read one input block and print the answer."""
    n = int(input())
    nums = list(map(int, input().split()))

    q = int(input())
    for i in range(q):
        target = int(input())
        print(lower_bound(nums, target))


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two numbers."""
    while b != 0:
        temp = a % b
        a = b
        b = temp
    return a


def gcd_of_array(nums: list[int]) -> int:
    """Greatest common divisor of all elements."""
    if len(nums) == 0:
        return 0
    result = 0
    for i in range(len(nums)):
        result = gcd(result, nums[i])
    return result


def solve4() -> None:
    """Read one input block and print the answer."""
    n = int(input())
    nums = list(map(int, input().split()))

    print(gcd_of_array(nums))


def main():
    solve()
    solve2()
    solve3()
    solve4()


if __name__ == "__main__":
    main()
